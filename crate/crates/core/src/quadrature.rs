//! Gauss–Jacobi rules from the Golub–Welsch eigenproblem, and the composite
//! radial rule used to integrate against (α+1)(1−t)^α dt on a sub-range of [0, 1].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use faer::{Mat, Side};

use crate::specfun::ln_beta_unchecked;

/// Three-term recurrence of the orthonormal Jacobi polynomials for the weight
/// (1−x)^a (1+x)^b on [−1, 1]: `diag[n]` is the monic shift and `off[n]` is
/// the square root of the monic β_{n+1}.
pub fn jacobi_recurrence(a: f64, b: f64, len: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = Vec::with_capacity(len);
    let mut off = Vec::with_capacity(len);
    let ab = a + b;
    for n in 0..len {
        let nf = n as f64;
        let d = if n == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * nf + ab) * (2.0 * nf + ab + 2.0))
        };
        diag.push(d);
        let m = nf + 1.0;
        let beta = if n == 0 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * m + ab;
            4.0 * m * (m + a) * (m + b) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off.push(beta.sqrt());
    }
    (diag, off)
}

/// Total mass of (1−x)^a (1+x)^b on [−1, 1].
pub fn jacobi_mass(a: f64, b: f64) -> f64 {
    ((a + b + 1.0) * std::f64::consts::LN_2 + ln_beta_unchecked(a + 1.0, b + 1.0)).exp()
}

/// A Gauss rule on [−1, 1] for the weight (1−x)^a (1+x)^b.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn jacobi(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 1, "Gauss rule needs at least one node");
        let (diag, off) = jacobi_recurrence(a, b, n);
        let jm = Mat::<f64>::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else if i == j + 1 {
                off[j]
            } else if j == i + 1 {
                off[i]
            } else {
                0.0
            }
        });
        let mut nodes = if n == 1 {
            vec![diag[0]]
        } else {
            jm.self_adjoint_eigenvalues(Side::Lower).expect("tridiagonal eigenvalues")
        };
        let p0 = 1.0 / jacobi_mass(a, b).sqrt();
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            // Newton polish on the degree-n orthonormal polynomial
            for _ in 0..3 {
                let (pn, dpn, _) = eval_orthonormal(&diag, &off, p0, n, *x);
                if dpn != 0.0 {
                    let step = pn / dpn;
                    *x = (*x - step).clamp(-1.0, 1.0);
                    if step.abs() < 1e-16 {
                        break;
                    }
                }
            }
            let (_, _, sumsq) = eval_orthonormal(&diag, &off, p0, n, *x);
            weights.push(1.0 / sumsq);
        }
        GaussRule { nodes, weights }
    }

    pub fn legendre(n: usize) -> Self {
        Self::jacobi(n, 0.0, 0.0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Value and derivative of p_n together with Σ_{j<n} p_j(x)².
fn eval_orthonormal(diag: &[f64], off: &[f64], p0: f64, n: usize, x: f64) -> (f64, f64, f64) {
    let (mut prev, mut cur) = (0.0, p0);
    let (mut dprev, mut dcur) = (0.0, 0.0);
    let mut sumsq = 0.0;
    for k in 0..n {
        sumsq += cur * cur;
        let lag = if k == 0 { 0.0 } else { off[k - 1] };
        let next = ((x - diag[k]) * cur - lag * prev) / off[k];
        let dnext = (cur + (x - diag[k]) * dcur - lag * dprev) / off[k];
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    (cur, dcur, sumsq)
}

type RuleKey = (usize, u64, u64);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`GaussRule::jacobi`].
pub fn cached_jacobi(n: usize, a: f64, b: f64) -> Arc<GaussRule> {
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(r) = rule_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(GaussRule::jacobi(n, a, b));
    rule_cache().lock().unwrap().entry(key).or_insert(rule).clone()
}

/// Nodes in t with weights that already contain (α+1)(1−t)^α dt.
#[derive(Debug, Clone)]
pub struct RadialRule {
    pub t: Vec<f64>,
    pub w: Vec<f64>,
    pub ln_t: Vec<f64>,
}

/// Accuracy request for a [`RadialRule`]: the integrand is t^s·(polynomial of
/// degree `poly_degree`)·(ln t)^λ with s ≥ `s_min` and s + degree ≤ `degree`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleRequest {
    pub degree: usize,
    pub poly_degree: usize,
    pub s_min: f64,
}

impl RadialRule {
    pub fn build(alpha: f64, lo: f64, hi: f64, req: RuleRequest) -> Self {
        assert!((0.0..1.0).contains(&lo) && lo < hi && hi <= 1.0, "radial range [{lo}, {hi}]");
        let mut rule = RadialRule { t: Vec::new(), w: Vec::new(), ln_t: Vec::new() };
        let n_main = req.degree / 2 + 20;
        // dyadic pieces below which the integrand is negligible
        let growth = req.poly_degree as f64 * ((req.degree as f64) + 2.0).log2();
        let pieces = (((64.0 + growth) / (req.s_min + 1.0)).ceil() as usize + 1).min(96);

        let mut top = hi;
        if hi == 1.0 {
            let c = lo.max(0.5);
            let h = (1.0 - c) / 2.0;
            let g = cached_jacobi(n_main, alpha, 0.0);
            let scale = (alpha + 1.0) * h.powf(alpha + 1.0);
            for (x, wx) in g.nodes.iter().zip(&g.weights) {
                let t = c + h * (1.0 + x);
                rule.push(t, scale * wx);
            }
            top = c;
        }
        let mut piece = 0;
        while top > lo && piece < pieces {
            let bottom = (top / 2.0).max(lo);
            let bottom = if piece + 1 == pieces && lo == 0.0 { 0.0 } else { bottom };
            let g = cached_jacobi(n_main, 0.0, 0.0);
            let h = (top - bottom) / 2.0;
            for (x, wx) in g.nodes.iter().zip(&g.weights) {
                let t = bottom + h * (1.0 + x);
                let w = h * wx * (alpha + 1.0) * (1.0 - t).powf(alpha);
                rule.push(t, w);
            }
            top = bottom;
            piece += 1;
        }
        rule
    }

    fn push(&mut self, t: f64, w: f64) {
        self.t.push(t);
        self.w.push(w);
        self.ln_t.push(t.ln());
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Σ w_l t_l^s (ln t_l)^λ f(l).
    pub fn integrate(&self, s: f64, logpow: u32, f: impl Fn(usize) -> f64) -> f64 {
        let mut acc = 0.0;
        for l in 0..self.t.len() {
            let lt = self.ln_t[l];
            acc += self.w[l] * (s * lt).exp() * lt.powi(logpow as i32) * f(l);
        }
        acc
    }
}

type RadialKey = (u64, u64, u64, usize, usize, u64);

fn radial_cache() -> &'static Mutex<HashMap<RadialKey, Arc<RadialRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RadialKey, Arc<RadialRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized radial rule. Requests are bucketed (degree rounded up to a multiple
/// of 8, s_min rounded down to an integer) so that nearby blocks share rules.
pub fn radial_rule(alpha: f64, lo: f64, hi: f64, req: RuleRequest) -> Arc<RadialRule> {
    let req = RuleRequest {
        degree: req.degree.div_ceil(8) * 8,
        poly_degree: req.poly_degree,
        s_min: req.s_min.floor().clamp(0.0, 64.0),
    };
    let key = (alpha.to_bits(), lo.to_bits(), hi.to_bits(), req.degree, req.poly_degree, req.s_min.to_bits());
    if let Some(r) = radial_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(RadialRule::build(alpha, lo, hi, req));
    radial_cache().lock().unwrap().entry(key).or_insert(rule).clone()
}
