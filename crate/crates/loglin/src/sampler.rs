//! Moment-map inversion by generalized iterative scaling, seeded model
//! and branch-locus samplers, and the brute-force completion-count oracle
//! used by the property suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::completion::{branch_vector, lift_positive, ObservedSet, Tolerances};
use crate::error::{Error, Result};
use crate::faces::in_polytope;
use crate::rat::{self, Rat};
use crate::toric::ModelMatrix;

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SampleConfig { seed, count, tolerance: 1e-11, max_iterations: 100_000 }
    }
}

/// Inverts the moment map: the unique p in the model with A p = b.
///
/// Iteration: generalized iterative scaling on the rows of A padded with a
/// slack row that makes every column sum equal; converges for every b in
/// the polytope. Exponent damping 1/N with N the common column sum.
pub fn ips_fit(model: &ModelMatrix, b: &[Rat]) -> Result<Vec<f64>> {
    ips_fit_with(model, b, 1e-11, 100_000)
}

pub fn ips_fit_with(
    model: &ModelMatrix,
    b: &[Rat],
    tolerance: f64,
    max_iterations: usize,
) -> Result<Vec<f64>> {
    if b.len() != model.rows() {
        return Err(Error::Dimension(format!(
            "moment vector length {} != rows {}",
            b.len(),
            model.rows()
        )));
    }
    if !in_polytope(model, b) {
        return Err(Error::Domain("b is outside the polytope P_A".into()));
    }
    let n = model.cols();
    let k = model.rows();
    let a = model.matrix();
    let big_n: f64 = model
        .col_sums()
        .iter()
        .map(|s| rat::to_f64(&Rat::from_integer(s.clone())))
        .fold(0.0, f64::max);

    // padded rows: A plus the slack row N - colsum; padded targets likewise
    let mut rows: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..n)
                .map(|j| rat::to_f64(&Rat::from_integer(a.at(i, j).clone())))
                .collect()
        })
        .collect();
    let mut target: Vec<f64> = b.iter().map(rat::to_f64).collect();
    let slack: Vec<f64> = (0..n)
        .map(|j| big_n - rat::to_f64(&Rat::from_integer(model.col_sums()[j].clone())))
        .collect();
    if slack.iter().any(|&s| s > 0.0) {
        let sum_b: f64 = target.iter().sum();
        rows.push(slack);
        target.push(big_n - sum_b);
    }

    // zero targets force the supported coordinates to zero
    let mut p: Vec<f64> = vec![1.0 / n as f64; n];
    for (row, &t) in rows.iter().zip(&target) {
        if t == 0.0 {
            for j in 0..n {
                if row[j] > 0.0 {
                    p[j] = 0.0;
                }
            }
        }
    }
    let live: Vec<usize> = (0..rows.len()).filter(|&i| target[i] > 0.0).collect();

    let moments = |p: &[f64]| -> Vec<f64> {
        rows.iter()
            .map(|row| row.iter().zip(p).map(|(r, x)| r * x).sum())
            .collect()
    };
    let mut residual = f64::INFINITY;
    for _ in 0..max_iterations {
        let m = moments(&p);
        residual = m
            .iter()
            .zip(&target)
            .map(|(mi, ti)| (mi - ti).abs())
            .fold(0.0, f64::max);
        if residual <= tolerance {
            return Ok(p);
        }
        let mut log_ratio = vec![0.0; rows.len()];
        for &i in &live {
            if m[i] <= 0.0 {
                return Err(Error::Domain(format!(
                    "moment {} collapsed to zero during scaling",
                    i + 1
                )));
            }
            log_ratio[i] = (target[i] / m[i]).ln();
        }
        for j in 0..n {
            if p[j] == 0.0 {
                continue;
            }
            let mut e = 0.0;
            for &i in &live {
                if rows[i][j] != 0.0 {
                    e += rows[i][j] * log_ratio[i];
                }
            }
            p[j] *= (e / big_n).exp();
        }
    }
    Err(Error::IterationLimit(format!(
        "iterative scaling residual {residual} after {max_iterations} iterations"
    )))
}

/// Random positive model points: log-uniform parameters pushed through the
/// monomial map and normalized onto the simplex.
pub fn sample_model(model: &ModelMatrix, config: &SampleConfig) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let a = model.matrix();
    let k = model.rows();
    let n = model.cols();
    (0..config.count)
        .map(|_| {
            let log_theta: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let mut p: Vec<f64> = (0..n)
                .map(|j| {
                    let e: f64 = (0..k)
                        .map(|i| {
                            rat::to_f64(&Rat::from_integer(a.at(i, j).clone())) * log_theta[i]
                        })
                        .sum();
                    e.exp()
                })
                .collect();
            let total: f64 = p.iter().sum();
            for x in &mut p {
                *x /= total;
            }
            p
        })
        .collect()
}

/// Branch-locus samples, or the reason the locus is empty.
#[derive(Clone, Debug)]
pub enum BranchLocusSamples {
    Empty { reason: String },
    Points(Vec<Vec<f64>>),
}

/// Samples of the branch locus: random model points are flowed along the
/// fiber direction e^{tν} to the unique ν-orthogonal point (the flow stays
/// on the variety by the torus action) and renormalized.
pub fn sample_branch_locus(
    model: &ModelMatrix,
    obs: &ObservedSet,
    config: &SampleConfig,
) -> Result<BranchLocusSamples> {
    obs.require_rank_ok()?;
    if obs.in_proper_facial_set(model) {
        return Ok(BranchLocusSamples::Empty {
            reason: "E is contained in a proper facial set, so the branch locus is empty"
                .into(),
        });
    }
    let bv = branch_vector(model, obs)?;
    let nu: Vec<f64> = bv
        .nu
        .iter()
        .map(|x| rat::to_f64(&Rat::from_integer(x.clone())))
        .collect();
    let points = sample_model(model, config)
        .into_iter()
        .map(|p| {
            // h(t) = sum nu_i p_i e^{nu_i t} is strictly increasing with a
            // sign change; bisect it to machine precision
            let h = |t: f64| -> f64 {
                p.iter().zip(&nu).map(|(x, e)| e * x * (e * t).exp()).sum()
            };
            let mut lo = 0.0;
            let mut hi = 0.0;
            let mut step = 1.0;
            while h(lo) > 0.0 {
                lo -= step;
                step *= 2.0;
            }
            step = 1.0;
            while h(hi) < 0.0 {
                hi += step;
                step *= 2.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if h(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            let mut q: Vec<f64> =
                p.iter().zip(&nu).map(|(x, e)| x * (e * t).exp()).collect();
            let total: f64 = q.iter().sum();
            for x in &mut q {
                *x /= total;
            }
            q
        })
        .collect();
    Ok(BranchLocusSamples::Points(points))
}

/// Grid-scan oracle for the completion count: walks t over a uniform grid
/// along the fiber and counts sign changes of Σ qᵢ e^{tνᵢ} - 1. Shares
/// only the lift with the solver; no Newton, no bisection.
pub fn brute_force_completions(
    model: &ModelMatrix,
    obs: &ObservedSet,
    p_e: &[Rat],
    resolution: usize,
) -> Result<usize> {
    obs.require_rank_ok()?;
    let q = lift_positive(model, obs, p_e, &Tolerances::default())?;
    let bv = branch_vector(model, obs)?;
    let nu: Vec<f64> = bv
        .nu
        .iter()
        .map(|x| rat::to_f64(&Rat::from_integer(x.clone())))
        .collect();
    let g = |t: f64| -> f64 {
        q.iter().zip(&nu).map(|(x, e)| x * (e * t).exp()).sum::<f64>()
    };
    let has_pos = nu.iter().any(|&e| e > 0.0);
    let has_neg = nu.iter().any(|&e| e < 0.0);
    // expand until g clearly exceeds 1 on every growing end
    let mut t_max: f64 = 1.0;
    if has_pos {
        while g(t_max) <= 2.0 && t_max < 1e9 {
            t_max *= 2.0;
        }
    }
    let mut t_min: f64 = -1.0;
    if has_neg {
        while g(t_min) <= 2.0 && t_min > -1e9 {
            t_min *= 2.0;
        }
    }
    let steps = resolution.max(8);
    let mut count = 0;
    let mut prev = g(t_min) - 1.0;
    for s in 1..=steps {
        let t = t_min + (t_max - t_min) * (s as f64) / (steps as f64);
        let cur = g(t) - 1.0;
        if prev < 0.0 && cur >= 0.0 || prev >= 0.0 && cur < 0.0 {
            count += 1;
        }
        prev = cur;
    }
    Ok(count)
}
