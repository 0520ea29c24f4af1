//! Truncated-number-basis integration of the linearised master equation.
//!
//! Test oracle only: the density operator is a dense `D x D` matrix with
//! `D = levels_a * levels_b`, and every ladder operator is applied through a
//! sparse entry list.

use num_complex::Complex64;

use super::{CovarianceMatrix, LinearModel, MomentVector};
use crate::error::{Error, Result};

const MAX_LEVELS: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOptions {
    /// Number of Fock levels kept for the cavity and mechanical modes.
    pub levels: (usize, usize),
    pub t_end: f64,
    pub dt: f64,
}

#[derive(Debug, Clone)]
struct Sparse {
    entries: Vec<(usize, usize, Complex64)>,
}

impl Sparse {
    fn from_dense(dim: usize, m: &[Complex64]) -> Self {
        let mut entries = Vec::new();
        for r in 0..dim {
            for c in 0..dim {
                let v = m[r * dim + c];
                if v != Complex64::new(0.0, 0.0) {
                    entries.push((r, c, v));
                }
            }
        }
        Sparse { entries }
    }

    fn adjoint(&self) -> Self {
        Sparse { entries: self.entries.iter().map(|&(r, c, v)| (c, r, v.conj())).collect() }
    }
}

/// Dense operator algebra on the truncated space, used only while building.
struct Space {
    na: usize,
    nb: usize,
}

impl Space {
    fn dim(&self) -> usize {
        self.na * self.nb
    }

    fn zeros(&self) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); self.dim() * self.dim()]
    }

    fn lower(&self, cavity: bool) -> Vec<Complex64> {
        let d = self.dim();
        let mut m = self.zeros();
        for i in 0..self.na {
            for j in 0..self.nb {
                let s = i * self.nb + j;
                let (n, t) = if cavity {
                    (i, (i >= 1).then(|| (i - 1) * self.nb + j))
                } else {
                    (j, (j >= 1).then(|| i * self.nb + j - 1))
                };
                if let Some(t) = t {
                    m[t * d + s] = Complex64::new((n as f64).sqrt(), 0.0);
                }
            }
        }
        m
    }

    fn adjoint(&self, m: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = self.zeros();
        for r in 0..d {
            for c in 0..d {
                out[c * d + r] = m[r * d + c].conj();
            }
        }
        out
    }

    fn mul(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = self.zeros();
        for r in 0..d {
            for k in 0..d {
                let v = x[r * d + k];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out[r * d + c] += v * y[k * d + c];
                }
            }
        }
        out
    }

    fn axpy(&self, acc: &mut [Complex64], s: Complex64, x: &[Complex64]) {
        for (a, v) in acc.iter_mut().zip(x) {
            *a += s * v;
        }
    }
}

struct Lindbladian {
    dim: usize,
    /// `C = -iH - Gamma`, so that the no-jump part is `C rho + rho C+`.
    c: Sparse,
    c_adj: Sparse,
    jumps: Vec<(Complex64, Sparse, Sparse)>,
}

impl Lindbladian {
    fn build(m: &LinearModel, sp: &Space) -> Self {
        let re = |v: f64| Complex64::new(v, 0.0);
        let i = Complex64::i();
        let a = sp.lower(true);
        let ad = sp.adjoint(&a);
        let b = sp.lower(false);
        let bd = sp.adjoint(&b);
        let n_a = sp.mul(&ad, &a);
        let n_b = sp.mul(&bd, &b);
        let aa = sp.mul(&a, &a);
        let adad = sp.mul(&ad, &ad);
        let a_ad = sp.mul(&a, &ad);
        let b_bd = sp.mul(&b, &bd);
        let (ka, kb) = (m.kappa_a, m.kappa_b);
        let (ns, ms) = (m.n_ss, m.m_ss);

        let mut h = sp.zeros();
        sp.axpy(&mut h, re(m.delta_sd), &n_a);
        sp.axpy(&mut h, re(1.0), &n_b);
        let mut x_b = b.clone();
        sp.axpy(&mut x_b, re(1.0), &bd);
        let mut coupling = sp.zeros();
        sp.axpy(&mut coupling, m.g_sd, &ad);
        sp.axpy(&mut coupling, m.g_sd.conj(), &a);
        sp.axpy(&mut h, re(1.0), &sp.mul(&coupling, &x_b));

        let mut gamma = sp.zeros();
        sp.axpy(&mut gamma, re(0.5 * ka * (ns + 1.0)), &n_a);
        sp.axpy(&mut gamma, re(0.5 * ka * ns), &a_ad);
        sp.axpy(&mut gamma, re(0.5 * kb * (m.n_th + 1.0)), &n_b);
        sp.axpy(&mut gamma, re(0.5 * kb * m.n_th), &b_bd);
        sp.axpy(&mut gamma, -0.5 * ka * ms, &aa);
        sp.axpy(&mut gamma, -0.5 * ka * ms.conj(), &adad);

        let mut c = sp.zeros();
        sp.axpy(&mut c, -i, &h);
        sp.axpy(&mut c, re(-1.0), &gamma);
        let c = Sparse::from_dense(sp.dim(), &c);
        let c_adj = c.adjoint();

        let d = sp.dim();
        let s = |m: &[Complex64]| Sparse::from_dense(d, m);
        let jumps = vec![
            (re(ka * (ns + 1.0)), s(&a), s(&ad)),
            (re(ka * ns), s(&ad), s(&a)),
            (-ka * ms, s(&a), s(&a)),
            (-ka * ms.conj(), s(&ad), s(&ad)),
            (re(kb * (m.n_th + 1.0)), s(&b), s(&bd)),
            (re(kb * m.n_th), s(&bd), s(&b)),
        ];
        Lindbladian { dim: d, c, c_adj, jumps }
    }

    fn apply(&self, rho: &[Complex64], out: &mut [Complex64], tmp: &mut [Complex64]) {
        let d = self.dim;
        out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for &(r, k, v) in &self.c.entries {
            for col in 0..d {
                out[r * d + col] += v * rho[k * d + col];
            }
        }
        for &(k, col, v) in &self.c_adj.entries {
            for row in 0..d {
                out[row * d + col] += rho[row * d + k] * v;
            }
        }
        for (coef, left, right) in &self.jumps {
            if *coef == Complex64::new(0.0, 0.0) {
                continue;
            }
            tmp.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            for &(k, col, v) in &right.entries {
                for row in 0..d {
                    tmp[row * d + col] += rho[row * d + k] * v;
                }
            }
            for &(r, k, v) in &left.entries {
                let s = coef * v;
                for col in 0..d {
                    out[r * d + col] += s * tmp[k * d + col];
                }
            }
        }
    }
}

/// Integrates the master equation from the joint vacuum and returns the
/// covariance of the final state.
///
/// The residual two-photon term is assumed cancelled. Fails with
/// [`Error::OracleCutoff`] when the top two levels of either mode hold more
/// than `1e-6` population.
pub fn fock_oracle(m: &LinearModel, opts: &FockOptions) -> Result<CovarianceMatrix> {
    let (na, nb) = opts.levels;
    for (field, n) in [("levels.0", na), ("levels.1", nb)] {
        if !(3..=MAX_LEVELS).contains(&n) {
            return Err(Error::OutOfRange { field, reason: format!("{n} not in 3..={MAX_LEVELS}") });
        }
    }
    let cap = m.max_step();
    if !(opts.dt > 0.0) || opts.dt > cap * (1.0 + 1e-12) {
        return Err(Error::StepTooLarge { dt: opts.dt, cap });
    }
    let sp = Space { na, nb };
    let l = Lindbladian::build(m, &sp);
    let d = sp.dim();

    let mut rho = sp.zeros();
    rho[0] = Complex64::new(1.0, 0.0);
    let mut k = [sp.zeros(), sp.zeros(), sp.zeros(), sp.zeros()];
    let mut stage = sp.zeros();
    let mut tmp = sp.zeros();

    let steps = (opts.t_end / opts.dt).ceil().max(1.0) as usize;
    let h = opts.t_end / steps as f64;
    let per_period = ((std::f64::consts::TAU / h).round() as usize).max(1);
    let mut checkpoint = rho.clone();
    for n in 1..=steps {
        l.apply(&rho, &mut k[0], &mut tmp);
        for s in 1..4 {
            let w = if s == 3 { h } else { 0.5 * h };
            for (x, (r, kp)) in stage.iter_mut().zip(rho.iter().zip(&k[s - 1])) {
                *x = r + w * kp;
            }
            l.apply(&stage, &mut k[s], &mut tmp);
        }
        for idx in 0..d * d {
            rho[idx] += h / 6.0 * (k[0][idx] + 2.0 * k[1][idx] + 2.0 * k[2][idx] + k[3][idx]);
        }
        if n % per_period == 0 {
            let norm: f64 = rho.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let change: f64 = rho.iter().zip(&checkpoint).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
            if change <= 1e-10 * norm {
                break;
            }
            checkpoint.copy_from_slice(&rho);
        }
    }

    let leak = top_population(&rho, na, nb);
    if leak > 1e-6 {
        return Err(Error::OracleCutoff(leak));
    }
    Ok(moments(&rho, na, nb).to_covariance())
}

fn top_population(rho: &[Complex64], na: usize, nb: usize) -> f64 {
    let d = na * nb;
    let (mut pa, mut pb) = (0.0, 0.0);
    for i in 0..na {
        for j in 0..nb {
            let s = i * nb + j;
            let p = rho[s * d + s].re;
            if i + 2 >= na {
                pa += p;
            }
            if j + 2 >= nb {
                pb += p;
            }
        }
    }
    f64::max(pa, pb)
}

/// Central second moments `<o1 o2> - <o1><o2>` in the `MomentVector` order.
fn moments(rho: &[Complex64], na: usize, nb: usize) -> MomentVector {
    let d = na * nb;
    let idx = |i: usize, j: usize| i * nb + j;
    // Tr(rho O) for O = product of lowering operators with shifts (da, db)
    // applied to ket |i, j>: collect <bra| from rho[ket, bra].
    let expect = |f: &dyn Fn(usize, usize) -> Option<(usize, usize, f64)>| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..na {
            for j in 0..nb {
                if let Some((ti, tj, amp)) = f(i, j) {
                    // O |i,j> = amp |ti,tj>  =>  Tr(rho O) += amp * rho[(i,j),(ti,tj)]
                    acc += amp * rho[idx(i, j) * d + idx(ti, tj)];
                }
            }
        }
        acc
    };
    let sq = |n: usize| (n as f64).sqrt();
    let lower = |n: usize, k: usize| -> Option<f64> { (n >= k).then(|| (0..k).map(|m| sq(n - m)).product()) };
    let raise = |n: usize, k: usize, cap: usize| -> Option<f64> {
        (n + k < cap).then(|| (1..=k).map(|m| sq(n + m)).product())
    };

    // O = (a+)^pa a^qa (b+)^pb b^qb in normal order; acting on |i,j> first
    // lowers then raises each mode.
    let op = |pa: usize, qa: usize, pb: usize, qb: usize| {
        expect(&|i, j| {
            let la = lower(i, qa)?;
            let ra = raise(i - qa, pa, na)?;
            let lb = lower(j, qb)?;
            let rb = raise(j - qb, pb, nb)?;
            Some((i - qa + pa, j - qb + pb, la * ra * lb * rb))
        })
    };

    let a = op(0, 1, 0, 0);
    let b = op(0, 0, 0, 1);
    let (ac, bc) = (a.conj(), b.conj());
    MomentVector([
        op(1, 1, 0, 0) - ac * a,
        op(0, 0, 1, 1) - bc * b,
        op(2, 0, 0, 0) - ac * ac,
        op(0, 2, 0, 0) - a * a,
        op(0, 0, 2, 0) - bc * bc,
        op(0, 0, 0, 2) - b * b,
        op(1, 0, 1, 0) - ac * bc,
        op(0, 1, 0, 1) - a * b,
        op(1, 0, 0, 1) - ac * b,
        op(0, 1, 1, 0) - a * bc,
    ])
}
