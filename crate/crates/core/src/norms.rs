//! `L_p` and weak-`L_p` quasinorms, martingale Hardy norms, the `H_p` modulus
//! of continuity, `p`-atoms and atomic assembly.

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VilenkinError};
use crate::group::{cylinder_cells, Cylinder, GroupPoint, VilenkinStructure};
use crate::scalar::Scalar;
use crate::transform::{maximal_function, maximal_of, Spectrum, StepFunction};

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(VilenkinError::Exponent(p))
    }
}

/// `‖f‖_p = (∫|f|^p dμ)^{1/p}`
pub fn lp_quasinorm<T: Scalar>(f: &StepFunction<T>, p: f64) -> Result<T> {
    check_p(p)?;
    let pt = T::of(p);
    let sum: T = f.values().iter().map(|v| v.norm().powf(pt)).sum();
    Ok((sum / T::of_usize(f.values().len())).powf(T::one() / pt))
}

/// `∫|f|^p dμ`, the `p`-th power of the quasinorm (additive for `p ≤ 1`).
pub fn lp_power<T: Scalar>(f: &StepFunction<T>, p: f64) -> Result<T> {
    check_p(p)?;
    let pt = T::of(p);
    let sum: T = f.values().iter().map(|v| v.norm().powf(pt)).sum();
    Ok(sum / T::of_usize(f.values().len()))
}

/// Both forms of the weak-`L_p` quasinorm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakNorm<T> {
    /// `sup_λ λ^p μ(|f| > λ)`
    pub powered: T,
    /// `powered^{1/p}`, homogeneous of degree one
    pub root: T,
}

/// One level of the distribution function: `μ(|f| ≥ magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelSet {
    pub magnitude: f64,
    pub measure: f64,
}

/// Distinct positive magnitudes in decreasing order with `μ(|f| ≥ v)`.
pub fn level_sets<T: Scalar>(f: &StepFunction<T>) -> Vec<LevelSet> {
    let mags = f.magnitudes();
    let mut order: Vec<usize> = (0..mags.len()).collect();
    order.sort_by(|&a, &b| mags[b].partial_cmp(&mags[a]).unwrap().then(a.cmp(&b)));
    let total = mags.len() as f64;
    let mut out = Vec::new();
    for (i, &cell) in order.iter().enumerate() {
        let v = mags[cell];
        if v <= T::zero() {
            break;
        }
        let last_of_run = order.get(i + 1).is_none_or(|&next| mags[next] < v);
        if last_of_run {
            out.push(LevelSet {
                magnitude: v.to_f64_lossy(),
                measure: (i + 1) as f64 / total,
            });
        }
    }
    out
}

/// Evaluates `v^p μ(|f| ≥ v)` at every achieved magnitude `v`; on a step
/// function this is exactly `sup_{λ>0} λ^p μ(|f| > λ)`.
pub fn weak_lp_quasinorm<T: Scalar>(f: &StepFunction<T>, p: f64) -> Result<WeakNorm<T>> {
    check_p(p)?;
    let pt = T::of(p);
    let mags = f.magnitudes();
    let mut sorted = mags.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let total = T::of_usize(sorted.len());
    let mut powered = T::zero();
    for (i, &v) in sorted.iter().enumerate() {
        if v <= T::zero() {
            break;
        }
        if sorted.get(i + 1).is_none_or(|&next| next < v) {
            let candidate = v.powf(pt) * T::of_usize(i + 1) / total;
            if candidate > powered {
                powered = candidate;
            }
        }
    }
    Ok(WeakNorm {
        powered,
        root: powered.powf(T::one() / pt),
    })
}

/// `‖f‖_{H_p} = ‖f*‖_p` for the martingale whose finest level is `f`.
pub fn hardy_norm_of<T: Scalar>(f: &StepFunction<T>, p: f64) -> Result<T> {
    check_p(p)?;
    lp_quasinorm(&maximal_of(f), p)
}

pub fn hardy_norm<T: Scalar>(s: &Spectrum<T>, p: f64) -> Result<T> {
    check_p(p)?;
    lp_quasinorm(&maximal_function(s), p)
}

/// `ω(1/M_n, f)_{H_p} = ‖f − S_{M_n} f‖_{H_p}`
pub fn modulus_of_continuity<T: Scalar>(s: &Spectrum<T>, n: usize, p: f64) -> Result<T> {
    let vs = s.structure();
    if n > vs.resolution() {
        return Err(VilenkinError::Resolution {
            required: n,
            available: vs.resolution(),
        });
    }
    hardy_norm(&s.tail(vs.big_m(n))?, p)
}

/// Summary of the quasinorms of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub p: f64,
    pub lp: f64,
    pub weak_lp_powered: f64,
    pub weak_lp_root: f64,
    pub hardy: Option<f64>,
    pub levels: Vec<LevelSet>,
}

pub fn norm_report<T: Scalar>(f: &StepFunction<T>, p: f64, with_hardy: bool) -> Result<NormReport> {
    let weak = weak_lp_quasinorm(f, p)?;
    Ok(NormReport {
        p,
        lp: lp_quasinorm(f, p)?.to_f64_lossy(),
        weak_lp_powered: weak.powered.to_f64_lossy(),
        weak_lp_root: weak.root.to_f64_lossy(),
        hardy: if with_hardy {
            Some(hardy_norm_of(f, p)?.to_f64_lossy())
        } else {
            None
        },
        levels: level_sets(f),
    })
}

/// The cylinder `I_depth(base)` an atom lives on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub base: GroupPoint,
    pub depth: usize,
}

impl Interval {
    pub fn new(base: GroupPoint, depth: usize) -> Self {
        Self { base, depth }
    }

    /// `I_depth = I_depth(0)`
    pub fn at_origin(depth: usize, vs: &VilenkinStructure) -> Self {
        Self {
            base: GroupPoint::zero(vs),
            depth,
        }
    }

    pub fn cylinder(&self, vs: &VilenkinStructure) -> Result<Cylinder> {
        cylinder_cells(&self.base, self.depth, vs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub value: f64,
}

/// Three-condition `p`-atom test with the numbers behind each verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomCertificate {
    pub interval: Interval,
    /// `|∫_I a dμ|`
    pub zero_mean: Check,
    /// `‖a‖_∞ · μ(I)^{1/p}`, must not exceed 1
    pub sup_bound: Check,
    /// `max |a|` outside `I`
    pub support: Check,
}

impl AtomCertificate {
    pub fn is_valid(&self) -> bool {
        self.zero_mean.passed && self.sup_bound.passed && self.support.passed
    }
}

fn relative_tolerance<T: Scalar>() -> f64 {
    1e-12f64.max(64.0 * T::epsilon_f64())
}

pub fn validate_atom<T: Scalar>(
    a: &StepFunction<T>,
    p: f64,
    interval: &Interval,
) -> Result<AtomCertificate> {
    check_p(p)?;
    let vs = a.structure();
    let cyl = interval.cylinder(vs)?;
    let sup = a.sup_norm().to_f64_lossy();
    let tol = relative_tolerance::<T>();

    let mean = a.integral_over(&cyl).norm().to_f64_lossy();
    let ratio = sup * cyl.measure(vs).powf(1.0 / p);
    let outside = a
        .values()
        .iter()
        .enumerate()
        .filter(|(cell, _)| !cyl.contains(*cell))
        .map(|(_, v)| v.norm().to_f64_lossy())
        .fold(0.0, f64::max);

    Ok(AtomCertificate {
        interval: interval.clone(),
        zero_mean: Check {
            passed: mean <= tol * sup,
            value: mean,
        },
        sup_bound: Check {
            passed: ratio <= 1.0 + tol,
            value: ratio,
        },
        support: Check {
            passed: outside <= tol * sup,
            value: outside,
        },
    })
}

/// Finite atomic decomposition `Σ μ_k a_k`.
#[derive(Debug, Clone)]
pub struct AtomicDecomposition<T: Scalar> {
    pub vs: Arc<VilenkinStructure>,
    pub p: f64,
    pub coefficients: Vec<T>,
    pub atoms: Vec<StepFunction<T>>,
    pub intervals: Vec<Interval>,
}

impl<T: Scalar> AtomicDecomposition<T> {
    pub fn new(vs: Arc<VilenkinStructure>, p: f64) -> Self {
        Self {
            vs,
            p,
            coefficients: Vec::new(),
            atoms: Vec::new(),
            intervals: Vec::new(),
        }
    }

    pub fn push(&mut self, coefficient: T, atom: StepFunction<T>, interval: Interval) {
        self.coefficients.push(coefficient);
        self.atoms.push(atom);
        self.intervals.push(interval);
    }

    /// `(Σ |μ_k|^p)^{1/p}`, the upper estimate for `‖f‖_{H_p}`.
    pub fn coefficient_bound(&self) -> T {
        let pt = T::of(self.p);
        let s: T = self.coefficients.iter().map(|c| c.abs().powf(pt)).sum();
        if s == T::zero() {
            T::zero()
        } else {
            s.powf(T::one() / pt)
        }
    }

    pub fn certificates(&self) -> Result<Vec<AtomCertificate>> {
        self.atoms
            .iter()
            .zip(&self.intervals)
            .map(|(a, i)| validate_atom(a, self.p, i))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Assembly<T: Scalar> {
    /// `f_n = Σ μ_k S_{M_n} a_k`
    pub level: StepFunction<T>,
    pub coefficient_bound: T,
    pub warnings: Vec<String>,
}

/// Assembles martingale level `n` from the atoms.
pub fn assemble_from_atoms<T: Scalar>(d: &AtomicDecomposition<T>, n: usize) -> Result<Assembly<T>> {
    if n > d.vs.resolution() {
        return Err(VilenkinError::Resolution {
            required: n,
            available: d.vs.resolution(),
        });
    }
    let mut level = StepFunction::zeros(d.vs.clone());
    let mut warnings = Vec::new();
    for (i, ((mu, atom), interval)) in d
        .coefficients
        .iter()
        .zip(&d.atoms)
        .zip(&d.intervals)
        .enumerate()
    {
        if !atom.structure().same_as(&d.vs) {
            return Err(VilenkinError::StructureMismatch);
        }
        let cert = validate_atom(atom, d.p, interval)?;
        if !cert.is_valid() {
            warnings.push(format!("atom {i} fails the p-atom conditions: {cert:?}"));
        }
        level.add_scaled(Complex::new(*mu, T::zero()), &atom.block_average(n)?)?;
    }
    Ok(Assembly {
        level,
        coefficient_bound: d.coefficient_bound(),
        warnings,
    })
}
