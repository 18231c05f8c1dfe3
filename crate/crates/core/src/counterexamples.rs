//! Finite truncations of the two divergence constructions for Fejér means on
//! `H_p`, `0 < p ≤ 1/2`, together with their coefficient laws, modulus of
//! continuity reports and divergence statistics.
//!
//! Both constructions are sums of scaled Dirichlet differences
//! `D_{M_{j+1}} − D_{M_j} = M_{j+1} 1_{I_{j+1}} − M_j 1_{I_j}`, each of which is a
//! multiple of a `p`-atom on `I_j`.
//!
//! * 2a (`0 < p < 1/2`): `f = Σ_{i≤A} (λ / M_i^{1/p−2}) a_i` with
//!   `a_i = (M_i^{1/p−1}/λ)(D_{M_{i+1}} − D_{M_i})`, so `f̂(j) = M_i` on `[M_i, M_{i+1})`.
//! * 2b (`p = 1/2`): `f = Σ_{1≤i≤A} (λ / M_i²) a_i` with
//!   `a_i = (M_{2M_i}/λ)(D_{M_{2M_i+1}} − D_{M_{2M_i}})`, so `f̂(j) = M_{2M_i}/M_i²`
//!   on `[M_{2M_i}, M_{2M_i+1})`.

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::characters::{character_function, dirichlet_kernel, fejer_kernel, q_index};
use crate::error::{Result, VilenkinError};
use crate::group::VilenkinStructure;
use crate::norms::{
    lp_quasinorm, modulus_of_continuity, weak_lp_quasinorm, AtomicDecomposition, Interval, WeakNorm,
};
use crate::scalar::Scalar;
use crate::transform::{
    analyze, fejer_mean, fejer_spectrum, partial_sum, synthesize, Spectrum, StepFunction,
};

fn real<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn need_depth(required: usize, vs: &VilenkinStructure) -> Result<()> {
    if required > vs.resolution() {
        return Err(VilenkinError::Capacity {
            required_n: required,
            available_n: vs.resolution(),
        });
    }
    Ok(())
}

/// `D_{M_{j+1}} − D_{M_j}`
fn dirichlet_step<T: Scalar>(j: usize, vs: &Arc<VilenkinStructure>) -> Result<StepFunction<T>> {
    need_depth(j + 1, vs)?;
    dirichlet_kernel::<T>(vs.big_m(j + 1), vs)?.try_sub(&dirichlet_kernel(vs.big_m(j), vs)?)
}

/// `(M_k^{1/p−1}/λ)(D_{M_{k+1}} − D_{M_k})`, a `p`-atom on `I_k`.
pub fn atom_2a<T: Scalar>(
    k: usize,
    p: f64,
    vs: &Arc<VilenkinStructure>,
) -> Result<StepFunction<T>> {
    if p.is_nan() || p <= 0.0 {
        return Err(VilenkinError::Exponent(p));
    }
    let scale = (vs.big_m(k) as f64).powf(1.0 / p - 1.0) / vs.lambda() as f64;
    Ok(dirichlet_step::<T>(k, vs)?.scale(T::of(scale)))
}

/// Closed-form coefficient of the 2a construction truncated at `a`.
pub fn coefficient_2a(j: usize, a: usize, vs: &VilenkinStructure) -> f64 {
    (0..=a)
        .find(|&i| vs.big_m(i) <= j && j < vs.big_m(i + 1))
        .map_or(0.0, |i| vs.big_m(i) as f64)
}

#[derive(Debug, Clone)]
pub struct Construction2a<T: Scalar> {
    pub p: f64,
    pub truncation: usize,
    pub vs: Arc<VilenkinStructure>,
    /// Finest level `f^{(A)}`.
    pub function: StepFunction<T>,
    pub spectrum: Spectrum<T>,
    pub decomposition: AtomicDecomposition<T>,
}

pub fn build_2a<T: Scalar>(
    p: f64,
    truncation: usize,
    vs: &Arc<VilenkinStructure>,
) -> Result<Construction2a<T>> {
    if !(p > 0.0 && p < 0.5) {
        return Err(VilenkinError::Exponent(p));
    }
    need_depth(truncation + 1, vs)?;
    let lambda = vs.lambda() as f64;
    let mut decomposition = AtomicDecomposition::new(vs.clone(), p);
    let mut function = StepFunction::zeros(vs.clone());
    for i in 0..=truncation {
        let mu = T::of(lambda / (vs.big_m(i) as f64).powf(1.0 / p - 2.0));
        let atom = atom_2a::<T>(i, p, vs)?;
        function.add_scaled(real(mu), &atom)?;
        decomposition.push(mu, atom, Interval::at_origin(i, vs));
    }
    let spectrum = analyze(&function);
    Ok(Construction2a {
        p,
        truncation,
        vs: vs.clone(),
        function,
        spectrum,
        decomposition,
    })
}

impl<T: Scalar> Construction2a<T> {
    /// Largest deviation of the assembled spectrum from `f̂(j) = M_i` on `[M_i, M_{i+1})`.
    pub fn coefficient_law_error(&self) -> f64 {
        self.spectrum
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let expected = coefficient_2a(j, self.truncation, &self.vs);
                (c.re.to_f64_lossy() - expected).hypot(c.im.to_f64_lossy())
            })
            .fold(0.0, f64::max)
    }
}

/// One row of a modulus-of-continuity report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusRow {
    pub n: usize,
    pub omega: f64,
    pub bound: f64,
    /// `omega / bound`
    pub ratio: f64,
}

/// `ω(1/M_n, f)_{H_p}` against `M_n^{−(1/p−2)}` for each `n`.
pub fn modulus_report_2a<T: Scalar>(
    c: &Construction2a<T>,
    ns: impl IntoIterator<Item = usize>,
) -> Result<Vec<ModulusRow>> {
    let mut rows: Vec<ModulusRow> = ns
        .into_iter()
        .map(|n| {
            let omega = modulus_of_continuity(&c.spectrum, n, c.p)?.to_f64_lossy();
            let bound = (c.vs.big_m(n) as f64).powf(-(1.0 / c.p - 2.0));
            Ok(ModulusRow {
                n,
                omega,
                bound,
                ratio: omega / bound,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// Weak-`L_p` size of `σ_{M_k+1} f − f`, both forms.
pub fn divergence_2a<T: Scalar>(c: &Construction2a<T>, k: usize) -> Result<WeakNorm<T>> {
    if k >= c.truncation {
        return Err(VilenkinError::Range {
            value: k,
            limit: c.truncation,
        });
    }
    let diff = fejer_mean(&c.spectrum, c.vs.big_m(k) + 1)?.try_sub(&c.function)?;
    weak_lp_quasinorm(&diff, c.p)
}

/// `‖σ_n f − f‖_p`
pub fn fejer_error<T: Scalar>(s: &Spectrum<T>, n: usize, p: f64) -> Result<T> {
    let diff = fejer_spectrum(s, n)?.try_sub(s)?;
    lp_quasinorm(&synthesize(&diff), p)
}

/// Residual of `S_{M_k+1} f − S_{M_k} f = M_k ψ_{M_k}`.
pub fn dominant_term_residual<T: Scalar>(c: &Construction2a<T>, k: usize) -> Result<T> {
    let mk = c.vs.big_m(k);
    let lhs = partial_sum(&c.spectrum, mk + 1)?.try_sub(&partial_sum(&c.spectrum, mk)?)?;
    let rhs = character_function::<T>(mk, &c.vs)?.scale(T::of_usize(mk));
    lhs.max_abs_diff(&rhs)
}

/// Residual of the five-term split of `σ_{M_k+1} f − f` used in the
/// divergence argument:
/// `(M_k σ_{M_k} f + S_{M_k} f + M_k ψ_{M_k} − M_k f − f) / (M_k + 1)`.
pub fn divergence_split_residual_2a<T: Scalar>(c: &Construction2a<T>, k: usize) -> Result<T> {
    let mk = c.vs.big_m(k);
    let n1 = T::of_usize(mk + 1);
    let m = T::of_usize(mk);
    let direct = fejer_mean(&c.spectrum, mk + 1)?.try_sub(&c.function)?;
    let mut split = fejer_mean(&c.spectrum, mk)?.scale(m / n1);
    split.add_scaled(real(T::one() / n1), &partial_sum(&c.spectrum, mk)?)?;
    split.add_scaled(real(m / n1), &character_function::<T>(mk, &c.vs)?)?;
    split.add_scaled(real(-(m + T::one()) / n1), &c.function)?;
    direct.max_abs_diff(&split)
}

/// `(M_{2M_i}/λ)(D_{M_{2M_i+1}} − D_{M_{2M_i}})`, a `1/2`-atom on `I_{2M_i}`.
pub fn atom_2b<T: Scalar>(i: usize, vs: &Arc<VilenkinStructure>) -> Result<StepFunction<T>> {
    need_depth(i, vs)?;
    let depth = 2 * vs.big_m(i);
    need_depth(depth + 1, vs)?;
    let scale = vs.big_m(depth) as f64 / vs.lambda() as f64;
    Ok(dirichlet_step::<T>(depth, vs)?.scale(T::of(scale)))
}

/// Resolution the 2b construction truncated at `a` needs: `2 M_a + 1`.
pub fn required_resolution_2b(a: usize, vs: &VilenkinStructure) -> Option<usize> {
    if a > vs.resolution() {
        return None;
    }
    Some(2 * vs.big_m(a) + 1)
}

/// Closed-form coefficient of the 2b construction truncated at `a`.
pub fn coefficient_2b(j: usize, a: usize, vs: &VilenkinStructure) -> f64 {
    (1..=a)
        .find(|&i| {
            let d = 2 * vs.big_m(i);
            vs.big_m(d) <= j && j < vs.big_m(d + 1)
        })
        .map_or(0.0, |i| {
            let mi = vs.big_m(i) as f64;
            vs.big_m(2 * vs.big_m(i)) as f64 / (mi * mi)
        })
}

#[derive(Debug, Clone)]
pub struct Construction2b<T: Scalar> {
    pub truncation: usize,
    pub vs: Arc<VilenkinStructure>,
    pub function: StepFunction<T>,
    pub spectrum: Spectrum<T>,
    pub decomposition: AtomicDecomposition<T>,
}

pub fn build_2b<T: Scalar>(
    truncation: usize,
    vs: &Arc<VilenkinStructure>,
) -> Result<Construction2b<T>> {
    if truncation == 0 {
        return Err(VilenkinError::Validation(
            "the 2b sum starts at i = 1".into(),
        ));
    }
    let required = required_resolution_2b(truncation, vs).ok_or(VilenkinError::Capacity {
        required_n: usize::MAX,
        available_n: vs.resolution(),
    })?;
    need_depth(required, vs)?;
    let lambda = vs.lambda() as f64;
    let mut decomposition = AtomicDecomposition::new(vs.clone(), 0.5);
    let mut function = StepFunction::zeros(vs.clone());
    for i in 1..=truncation {
        let mi = vs.big_m(i) as f64;
        let mu = T::of(lambda / (mi * mi));
        let atom = atom_2b::<T>(i, vs)?;
        function.add_scaled(real(mu), &atom)?;
        decomposition.push(mu, atom, Interval::at_origin(2 * vs.big_m(i), vs));
    }
    let spectrum = analyze(&function);
    Ok(Construction2b {
        truncation,
        vs: vs.clone(),
        function,
        spectrum,
        decomposition,
    })
}

impl<T: Scalar> Construction2b<T> {
    pub fn coefficient_law_error(&self) -> f64 {
        self.spectrum
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let expected = coefficient_2b(j, self.truncation, &self.vs);
                (c.re.to_f64_lossy() - expected).hypot(c.im.to_f64_lossy())
            })
            .fold(0.0, f64::max)
    }

    /// `q_{M_k}`, checked against the resolution.
    pub fn divergence_index(&self, k: usize) -> Result<usize> {
        need_depth(k, &self.vs)?;
        let a = self.vs.big_m(k);
        need_depth(2 * a, &self.vs)?;
        let q = q_index(a, &self.vs)?;
        if q > self.vs.cells() {
            return Err(VilenkinError::Capacity {
                required_n: 2 * a + 1,
                available_n: self.vs.resolution(),
            });
        }
        Ok(q)
    }
}

/// `ω(1/M_n, f)_{H_{1/2}}` against `1/n²`.
pub fn modulus_report_2b<T: Scalar>(
    c: &Construction2b<T>,
    ns: impl IntoIterator<Item = usize>,
) -> Result<Vec<ModulusRow>> {
    let mut rows: Vec<ModulusRow> = ns
        .into_iter()
        .map(|n| {
            if n == 0 {
                return Err(VilenkinError::Undefined(
                    "the 1/n² bound needs n ≥ 1".into(),
                ));
            }
            let omega = modulus_of_continuity(&c.spectrum, n, 0.5)?.to_f64_lossy();
            let bound = 1.0 / (n * n) as f64;
            Ok(ModulusRow {
                n,
                omega,
                bound,
                ratio: omega / bound,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// `‖σ_{q_{M_k}} f − f‖_{1/2}`
pub fn divergence_2b<T: Scalar>(c: &Construction2b<T>, k: usize) -> Result<T> {
    let q = c.divergence_index(k)?;
    fejer_error(&c.spectrum, q, 0.5)
}

/// Residuals of the algebra behind the 2b divergence at scale `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResiduals {
    /// Four-term split of `σ_q f − f`.
    pub four_term: f64,
    /// `(1/q) Σ_{a<j≤q} S_j f = (r/q) S_a f + a ψ_a r K_r / (q M_k²)`.
    pub kernel_form: f64,
    /// `S_j f = S_a f + (a/M_k²) ψ_a D_{j−a}` over the sampled `j`.
    pub partial_sums: f64,
}

/// Checks the decomposition of `σ_q f − f` with `a = M_{2M_k}`, `q = q_{M_k}`,
/// `r = q_{M_k−1} = q − a`. `partial_sum_samples` caps how many `j ∈ (a, q]`
/// are compared pointwise (evenly spaced, always including both ends).
pub fn split_residuals_2b<T: Scalar>(
    c: &Construction2b<T>,
    k: usize,
    partial_sum_samples: usize,
) -> Result<SplitResiduals> {
    if k == 0 {
        return Err(VilenkinError::Undefined("q_{M_k − 1} needs k ≥ 1".into()));
    }
    let vs = &c.vs;
    let q = c.divergence_index(k)?;
    let mk = vs.big_m(k);
    let a = vs.big_m(2 * mk);
    let r = q_index(mk - 1, vs)?;
    debug_assert_eq!(a + r, q);
    let (qt, at, rt) = (T::of_usize(q), T::of_usize(a), T::of_usize(r));
    let mk2 = T::of_usize(mk * mk);
    let s = &c.spectrum;

    // (1/q) Σ_{j=a+1}^{q} S_j f: coefficient v collects q − max(v, a) copies.
    let tail_sum = synthesize(&s.weighted(|v| {
        if v < q {
            (qt - T::of_usize(v.max(a))) / qt
        } else {
            T::zero()
        }
    }));

    let direct = fejer_mean(s, q)?.try_sub(&c.function)?;
    let mut split = fejer_mean(s, a)?.scale(at / qt);
    split.add_scaled(real(T::one()), &tail_sum)?;
    split.add_scaled(real(-(at + rt) / qt), &c.function)?;
    let four_term = direct.max_abs_diff(&split)?.to_f64_lossy();

    let psi_a = character_function::<T>(a, vs)?;
    let s_a = partial_sum(s, a)?;
    let kernel = fejer_kernel::<T>(r, vs)?;
    let mut kernel_side = s_a.scale(rt / qt);
    let correction = psi_a.zip_with(&kernel, |x, y| x * y)?;
    kernel_side.add_scaled(real(at * rt / (qt * mk2)), &correction)?;
    let kernel_form = tail_sum.max_abs_diff(&kernel_side)?.to_f64_lossy();

    let count = r.min(partial_sum_samples.max(2));
    let mut js: Vec<usize> = (0..count)
        .map(|t| a + 1 + t * (r - 1) / (count - 1).max(1))
        .collect();
    js.dedup();
    let mut partial_sums = 0.0f64;
    for j in js {
        let lhs = partial_sum(s, j)?;
        let mut rhs = s_a.clone();
        let shifted = psi_a.zip_with(&dirichlet_kernel::<T>(j - a, vs)?, |x, y| x * y)?;
        rhs.add_scaled(real(at / mk2), &shifted)?;
        partial_sums = partial_sums.max(lhs.max_abs_diff(&rhs)?.to_f64_lossy());
    }

    Ok(SplitResiduals {
        four_term,
        kernel_form,
        partial_sums,
    })
}

/// One row of the `∫|q_A K_{q_A}|^{1/2}` scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: usize,
    pub q: usize,
    pub value: f64,
    /// `value / A`, absent for `A = 0`.
    pub per_a: Option<f64>,
}

/// `∫ |q_A K_{q_A}|^{1/2} dμ` for each `A`; needs `q_A ≤ M_N`.
pub fn kernel_halfnorm_scan<T: Scalar>(
    range: impl IntoIterator<Item = usize>,
    vs: &Arc<VilenkinStructure>,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for a in range {
        let q = q_index(a, vs)?;
        if q > vs.cells() {
            return Err(VilenkinError::Capacity {
                required_n: 2 * a + 1,
                available_n: vs.resolution(),
            });
        }
        let kernel = fejer_kernel::<T>(q, vs)?.scale(T::of_usize(q));
        let value = lp_quasinorm(&kernel, 0.5)?.to_f64_lossy().sqrt();
        rows.push(ScanRow {
            a,
            q,
            value,
            per_a: (a > 0).then(|| value / a as f64),
        });
    }
    rows.sort_by_key(|r| r.a);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{assemble_from_atoms, validate_atom};
    use crate::transform::condexp;

    fn walsh(n: usize) -> Arc<VilenkinStructure> {
        Arc::new(VilenkinStructure::walsh(n).unwrap())
    }

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn atom_2a_values() {
        let vs = walsh(4);
        let a = atom_2a::<f64>(1, 0.25, &vs).unwrap();
        for cell in 0..16 {
            let expected = match cell {
                0..=3 => 8.0,
                4..=7 => -8.0,
                _ => 0.0,
            };
            assert_eq!(a.value(cell), c(expected));
        }
        assert!(atom_2a::<f64>(4, 0.25, &vs).is_err());
    }

    #[test]
    fn atom_2a_spectrum_and_certificate() {
        let vs = Arc::new(VilenkinStructure::new(vec![2, 3, 2, 3, 2], 5).unwrap());
        for p in [0.2, 0.25, 1.0 / 3.0] {
            for k in 0..5 {
                let a = atom_2a::<f64>(k, p, &vs).unwrap();
                let scale = (vs.big_m(k) as f64).powf(1.0 / p - 1.0) / 3.0;
                assert!(a.integral().norm() < 1e-12 * scale.max(1.0));
                let s = analyze(&a);
                for (j, v) in s.coeffs().iter().enumerate() {
                    let expected = if vs.big_m(k) <= j && j < vs.big_m(k + 1) {
                        scale
                    } else {
                        0.0
                    };
                    assert!((v - c(expected)).norm() < 1e-9 * scale.max(1.0));
                }
                let cert = validate_atom(&a, p, &Interval::at_origin(k, &vs)).unwrap();
                assert!(cert.is_valid(), "k = {k}, p = {p}: {cert:?}");
            }
        }
    }

    #[test]
    fn build_2a_coefficients() {
        let vs = walsh(6);
        let con = build_2a::<f64>(0.25, 5, &vs).unwrap();
        assert_eq!(con.spectrum.coeff(5), c(4.0));
        assert_eq!(con.spectrum.coeff(0), c(0.0));
        assert_eq!(con.coefficient_law_error(), 0.0);
        let single = build_2a::<f64>(0.3, 0, &vs).unwrap();
        assert_eq!(single.spectrum.coeff(1), c(1.0));
        assert!(single.spectrum.coeffs()[2..].iter().all(|v| *v == c(0.0)));
        assert!(build_2a::<f64>(0.5, 3, &vs).is_err());
        assert!(build_2a::<f64>(0.25, 6, &vs).is_err());
    }

    #[test]
    fn martingale_levels_are_partial_atom_sums() {
        let vs = Arc::new(VilenkinStructure::new(vec![3, 2, 3, 2, 3, 2], 6).unwrap());
        let con = build_2a::<f64>(0.3, 4, &vs).unwrap();
        for n in 0..=6 {
            let level = condexp(&con.spectrum, n).unwrap();
            let assembled = assemble_from_atoms(&con.decomposition, n).unwrap();
            assert!(assembled.warnings.is_empty());
            assert!(level.max_abs_diff(&assembled.level).unwrap() < 1e-9);
            let mut head = StepFunction::zeros(vs.clone());
            for (i, (mu, atom)) in con
                .decomposition
                .coefficients
                .iter()
                .zip(&con.decomposition.atoms)
                .enumerate()
            {
                if i < n {
                    head.add_scaled(c(*mu), atom).unwrap();
                }
            }
            assert!(level.max_abs_diff(&head).unwrap() < 1e-9);
        }
    }

    #[test]
    fn modulus_2a_rows() {
        let vs = walsh(7);
        let con = build_2a::<f64>(0.25, 6, &vs).unwrap();
        let rows = modulus_report_2a(&con, [3, 1, 2, 7]).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![1, 2, 3, 7]
        );
        assert_eq!(rows[3].omega, 0.0);
        assert!(rows[..3]
            .iter()
            .all(|r| r.ratio.is_finite() && r.ratio > 0.0));
    }

    #[test]
    fn split_and_dominant_term_2a() {
        let vs = walsh(8);
        let con = build_2a::<f64>(0.25, 7, &vs).unwrap();
        for k in 0..7 {
            assert!(dominant_term_residual(&con, k).unwrap() < 1e-9);
            assert!(divergence_split_residual_2a(&con, k).unwrap() < 1e-8);
        }
        assert!(divergence_2a(&con, 7).is_err());
    }

    #[test]
    fn atom_2b_block() {
        let vs = walsh(9);
        let a = atom_2b::<f64>(1, &vs).unwrap();
        let cert = validate_atom(&a, 0.5, &Interval::at_origin(4, &vs)).unwrap();
        assert!(cert.is_valid(), "{cert:?}");
        let s = analyze(&a);
        for (j, v) in s.coeffs().iter().enumerate() {
            let expected = if (16..32).contains(&j) { 8.0 } else { 0.0 };
            assert_eq!(*v, c(expected));
        }
        assert!(atom_2b::<f64>(2, &vs).is_ok());
        assert!(atom_2b::<f64>(3, &vs).is_err());
    }

    #[test]
    fn build_2b_small() {
        assert!(build_2b::<f64>(2, &walsh(9)).is_ok());
        let vs = walsh(5);
        let con = build_2b::<f64>(1, &vs).unwrap();
        assert_eq!(con.coefficient_law_error(), 0.0);
        assert_eq!(con.spectrum.coeff(16), c(4.0));
        assert_eq!(con.spectrum.coeff(15), c(0.0));
        assert!(matches!(
            build_2b::<f64>(2, &vs),
            Err(VilenkinError::Capacity {
                required_n: 9,
                available_n: 5
            })
        ));
    }

    #[test]
    fn split_2b_first_scale() {
        let vs = walsh(9);
        let con = build_2b::<f64>(1, &vs).unwrap();
        let res = split_residuals_2b(&con, 1, 100).unwrap();
        assert!(res.four_term < 1e-10, "{res:?}");
        assert!(res.kernel_form < 1e-10, "{res:?}");
        assert!(res.partial_sums < 1e-10, "{res:?}");
        assert!(divergence_2b(&con, 1).unwrap() > 0.05);
        assert!(matches!(
            divergence_2b(&con, 3),
            Err(VilenkinError::Capacity { .. })
        ));
    }

    #[test]
    fn scan_small() {
        let vs = walsh(7);
        let rows = kernel_halfnorm_scan::<f64>(1..=3, &vs).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].value > 0.0);
        assert_eq!(rows[2].q, 85);
        assert!(kernel_halfnorm_scan::<f64>([4], &vs).is_err());
    }
}
