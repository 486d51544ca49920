//! Check reports: one line per check with a status and an optional witness.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Heuristic,
    AssertedNotVerified,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Heuristic => "heuristic",
            Status::AssertedNotVerified => "asserted-not-verified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, witness: Option<String>) {
        self.checks.push(Check { id: id.into(), status, witness });
    }

    /// Pass when `ok`, otherwise fail with the witness.
    pub fn check(&mut self, id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.push(id, Status::Pass, None);
        } else {
            self.push(id, Status::Fail, Some(witness()));
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn sort_by_id(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            write!(f, "{:<w$}  {}", c.id, c.status)?;
            if let Some(x) = &c.witness {
                write!(f, "  {x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
