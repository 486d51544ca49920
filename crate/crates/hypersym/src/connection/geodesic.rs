//! Numerical probe of the geodesic equation `ẋ = -∇_x x` (Dormand–Prince 5(4)).

use serde::Serialize;

use super::Connection;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeConfig {
    pub horizon: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub escape_threshold: f64,
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            horizon: 100.0,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            escape_threshold: 1e9,
            min_step: 1e-12,
            max_steps: 2_000_000,
        }
    }
}

impl ProbeConfig {
    pub fn with_horizon(horizon: f64) -> Self {
        ProbeConfig { horizon, ..Self::default() }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Verdict {
    CompleteUpToHorizon,
    BlowUpDetected { time: f64 },
}

impl Verdict {
    pub fn is_complete(&self) -> bool {
        matches!(self, Verdict::CompleteUpToHorizon)
    }

    pub fn blow_up_time(&self) -> Option<f64> {
        match self {
            Verdict::BlowUpDetected { time } => Some(*time),
            Verdict::CompleteUpToHorizon => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<(f64, Vec<f64>)>,
    pub verdict: Verdict,
}

impl Trajectory {
    /// CSV with columns `t`, one per coordinate, and `norm`.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut out = String::from("t");
        for l in labels {
            out.push(',');
            out.push_str(l);
        }
        out.push_str(",norm\n");
        for (t, x) in &self.samples {
            out.push_str(&format!("{t:.17e}"));
            for v in x {
                out.push_str(&format!(",{v:.17e}"));
            }
            out.push_str(&format!(",{:.17e}\n", norm(x)));
        }
        out
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `ẋ = -∇_x x` from `x0` and classifies the run.
///
/// Blow-up is reported once the state norm exceeds `escape_threshold` and the
/// accepted step has collapsed below `min_step`, or the state stops being finite.
pub fn geodesic_probe(conn: &Connection, x0: &[f64], cfg: &ProbeConfig) -> Result<Trajectory> {
    let n = conn.dim();
    if x0.len() != n {
        return Err(Error::Dimension { expected: n, got: x0.len() });
    }
    if !(cfg.horizon > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.rel_tol >= 0.0) || !(cfg.min_step > 0.0) {
        return Err(Error::InvalidArgument("horizon, tolerances and min_step must be positive".into()));
    }
    if !(cfg.escape_threshold > norm(x0)) {
        return Err(Error::InvalidArgument("escape_threshold must exceed |x0|".into()));
    }
    let g = conn.to_f64();
    let rhs = |x: &[f64], out: &mut [f64]| {
        out.iter_mut().for_each(|o| *o = 0.0);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = x[i] * x[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] -= w * g[i][j][k];
                }
            }
        }
    };

    let mut t = 0.0;
    let mut x = x0.to_vec();
    let mut samples = vec![(t, x.clone())];
    let mut h = (cfg.horizon / 100.0).min(0.01);
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut y5 = vec![0.0; n];
    rhs(&x, &mut k[0]);
    let mut steps = 0;
    while t < cfg.horizon {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(Error::InvalidArgument("step budget exhausted".into()));
        }
        h = h.min(cfg.horizon - t);
        for s in 1..7 {
            for c in 0..n {
                tmp[c] = x[c] + h * (0..s).map(|r| A[s][r] * k[r][c]).sum::<f64>();
            }
            rhs(&tmp, &mut k[s]);
        }
        let mut err = 0.0f64;
        for c in 0..n {
            y5[c] = x[c] + h * (0..7).map(|r| B5[r] * k[r][c]).sum::<f64>();
            let y4 = x[c] + h * (0..7).map(|r| B4[r] * k[r][c]).sum::<f64>();
            let sc = cfg.abs_tol + cfg.rel_tol * x[c].abs().max(y5[c].abs());
            err = err.max(((y5[c] - y4) / sc).abs());
        }
        let finite = y5.iter().all(|v| v.is_finite()) && err.is_finite();
        if finite && err <= 1.0 {
            t += h;
            x.copy_from_slice(&y5);
            // FSAL: the last stage is the derivative at the new point.
            let last = k[6].clone();
            k[0] = last;
            samples.push((t, x.clone()));
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= grow;
        } else {
            let shrink = if finite { (0.9 * err.powf(-0.25)).clamp(0.1, 0.5) } else { 0.1 };
            h *= shrink;
        }
        let big = norm(&x) > cfg.escape_threshold;
        if h < cfg.min_step && (big || !finite) {
            return Ok(Trajectory { samples, verdict: Verdict::BlowUpDetected { time: t } });
        }
        if h < cfg.min_step {
            return Err(Error::InvalidArgument(format!("step size collapsed at t = {t} below the escape threshold")));
        }
    }
    Ok(Trajectory { samples, verdict: Verdict::CompleteUpToHorizon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::tests::{nabla0, nabla1, nabla2};
    use crate::liealg::named_algebra;

    #[test]
    fn nabla0_complete() {
        let tr = geodesic_probe(&nabla0(), &[1.0, 0.0], &ProbeConfig::with_horizon(100.0)).unwrap();
        assert!(tr.verdict.is_complete());
        let (t, x) = tr.samples.last().unwrap();
        assert!((t - 100.0).abs() < 1e-9);
        // a1 = 1, a2 = -t
        assert!((x[0] - 1.0).abs() < 1e-8 && (x[1] + 100.0).abs() < 1e-6);
    }

    #[test]
    fn zero_connection_constant() {
        let c = Connection::zero(named_algebra("R4").unwrap());
        let tr = geodesic_probe(&c, &[1.0, -2.0, 0.5, 3.0], &ProbeConfig::with_horizon(50.0)).unwrap();
        assert!(tr.verdict.is_complete());
        assert_eq!(tr.samples.last().unwrap().1, vec![1.0, -2.0, 0.5, 3.0]);
    }

    #[test]
    fn nabla1_blows_up_near_one() {
        let tr = geodesic_probe(&nabla1(), &[1.0, 1.0], &ProbeConfig::with_horizon(2.0)).unwrap();
        let t = tr.verdict.blow_up_time().expect("blow-up");
        assert!((t - 1.0).abs() < 0.05, "t = {t}");
    }

    #[test]
    fn nabla2_blows_up_near_two() {
        let tr = geodesic_probe(&nabla2(), &[1.0, 0.0], &ProbeConfig::with_horizon(5.0)).unwrap();
        let t = tr.verdict.blow_up_time().expect("blow-up");
        assert!((t - 2.0).abs() < 0.1, "t = {t}");
    }

    #[test]
    fn verdict_stable_under_tolerance() {
        let base = ProbeConfig::with_horizon(2.0);
        let a = geodesic_probe(&nabla1(), &[1.0, 1.0], &base).unwrap().verdict.blow_up_time().unwrap();
        let b = geodesic_probe(&nabla1(), &[1.0, 1.0], &base.with_tol(base.abs_tol / 2.0))
            .unwrap()
            .verdict
            .blow_up_time()
            .unwrap();
        assert!(((a - b) / a).abs() < 0.05);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = ProbeConfig { abs_tol: -1.0, ..ProbeConfig::default() };
        assert!(geodesic_probe(&nabla0(), &[1.0, 0.0], &cfg).is_err());
        assert!(geodesic_probe(&nabla0(), &[1.0], &ProbeConfig::default()).is_err());
    }

    #[test]
    fn csv_columns() {
        let tr = geodesic_probe(&nabla0(), &[1.0, 0.0], &ProbeConfig::with_horizon(1.0)).unwrap();
        let csv = tr.to_csv(&["e1".into(), "e2".into()]);
        assert!(csv.starts_with("t,e1,e2,norm\n"));
        assert_eq!(csv.lines().nth(1).unwrap().split(',').count(), 4);
    }
}
