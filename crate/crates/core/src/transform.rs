//! Step functions, spectra and the Vilenkin-Fourier transform.
//!
//! The fast transform is a tensor product of small DFTs, one stage per
//! coordinate with radix `m_k`; there are no inter-stage twiddles because the
//! group is a direct product. Stages run in ascending coordinate order and
//! each output entry is reduced sequentially, so results do not depend on
//! anything but the input.

use std::sync::Arc;

use num_complex::Complex;

use crate::characters::RootTable;
use crate::error::{Result, VilenkinError};
use crate::group::{sub_cells, Cylinder, VilenkinStructure};
use crate::scalar::{czero, Scalar};

/// A function constant on every depth-`N` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction<T: Scalar> {
    vs: Arc<VilenkinStructure>,
    values: Vec<Complex<T>>,
}

/// Vilenkin-Fourier coefficients `f̂(0), .., f̂(M_N − 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Scalar> {
    vs: Arc<VilenkinStructure>,
    coeffs: Vec<Complex<T>>,
}

fn check_len(vs: &VilenkinStructure, len: usize) -> Result<()> {
    if len != vs.cells() {
        return Err(VilenkinError::Validation(format!(
            "expected {} entries, got {len}",
            vs.cells()
        )));
    }
    Ok(())
}

fn check_same(a: &VilenkinStructure, b: &VilenkinStructure) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(VilenkinError::StructureMismatch)
    }
}

impl<T: Scalar> StepFunction<T> {
    pub fn new(vs: Arc<VilenkinStructure>, values: Vec<Complex<T>>) -> Result<Self> {
        check_len(&vs, values.len())?;
        Ok(Self { vs, values })
    }

    pub fn from_real(vs: Arc<VilenkinStructure>, values: &[T]) -> Result<Self> {
        let values = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        Self::new(vs, values)
    }

    pub fn zeros(vs: Arc<VilenkinStructure>) -> Self {
        let values = vec![czero(); vs.cells()];
        Self { vs, values }
    }

    pub fn constant(vs: Arc<VilenkinStructure>, c: Complex<T>) -> Self {
        let values = vec![c; vs.cells()];
        Self { vs, values }
    }

    pub fn from_fn(vs: Arc<VilenkinStructure>, f: impl FnMut(usize) -> Complex<T>) -> Self {
        let values = (0..vs.cells()).map(f).collect();
        Self { vs, values }
    }

    /// `height · 1_I` for a cylinder `I`.
    pub fn indicator(vs: Arc<VilenkinStructure>, cyl: &Cylinder, height: T) -> Self {
        let mut f = Self::zeros(vs);
        for v in &mut f.values[cyl.range()] {
            *v = Complex::new(height, T::zero());
        }
        f
    }

    pub fn structure(&self) -> &Arc<VilenkinStructure> {
        &self.vs
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn value(&self, cell: usize) -> Complex<T> {
        self.values[cell]
    }

    /// `∫ f dμ`, exact as a finite average.
    pub fn integral(&self) -> Complex<T> {
        self.values.iter().copied().sum::<Complex<T>>() / T::of_usize(self.values.len())
    }

    /// `∫_I f dμ` over a cylinder.
    pub fn integral_over(&self, cyl: &Cylinder) -> Complex<T> {
        self.values[cyl.range()].iter().copied().sum::<Complex<T>>()
            / T::of_usize(self.values.len())
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    pub fn scale(&self, alpha: T) -> Self {
        self.map(|v| v * alpha)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            vs: self.vs.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        check_same(&self.vs, &other.vs)?;
        Ok(Self {
            vs: self.vs.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self += alpha · other`
    pub fn add_scaled(&mut self, alpha: Complex<T>, other: &Self) -> Result<()> {
        check_same(&self.vs, &other.vs)?;
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            *a += alpha * b;
        }
        Ok(())
    }

    /// `max |f − g|` over cells.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        check_same(&self.vs, &other.vs)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// Conditional expectation on the cylinder σ-algebra of depth `n`,
    /// computed by averaging over each `I_n` block.
    pub fn block_average(&self, n: usize) -> Result<Self> {
        self.vs.check_depth(n)?;
        let block = self.vs.cells() / self.vs.big_m(n);
        let inv = T::one() / T::of_usize(block);
        let mut values = Vec::with_capacity(self.values.len());
        for chunk in self.values.chunks(block) {
            let mean = chunk.iter().copied().sum::<Complex<T>>() * inv;
            values.extend(std::iter::repeat_n(mean, block));
        }
        Ok(Self {
            vs: self.vs.clone(),
            values,
        })
    }

    /// `x ↦ f(x − y)` for a cell `y`.
    pub fn translate(&self, y: usize) -> Self {
        let vs = &self.vs;
        Self::from_fn(vs.clone(), |x| self.values[sub_cells(x, y, vs)])
    }
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(vs: Arc<VilenkinStructure>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        check_len(&vs, coeffs.len())?;
        Ok(Self { vs, coeffs })
    }

    pub fn zeros(vs: Arc<VilenkinStructure>) -> Self {
        let coeffs = vec![czero(); vs.cells()];
        Self { vs, coeffs }
    }

    pub fn from_fn(vs: Arc<VilenkinStructure>, f: impl FnMut(usize) -> Complex<T>) -> Self {
        let coeffs = (0..vs.cells()).map(f).collect();
        Self { vs, coeffs }
    }

    /// `δ_{j = n}`, the spectrum of `ψ_n`.
    pub fn delta(vs: Arc<VilenkinStructure>, n: usize) -> Result<Self> {
        vs.check_index(n)?;
        let mut s = Self::zeros(vs);
        s.coeffs[n] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    pub fn structure(&self) -> &Arc<VilenkinStructure> {
        &self.vs
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex<T> {
        self.coeffs[j]
    }

    /// Multiplies coefficient `j` by `w(j)`.
    pub fn weighted(&self, w: impl Fn(usize) -> T) -> Self {
        Self {
            vs: self.vs.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| c * w(j))
                .collect(),
        }
    }

    /// Coefficients below `n` zeroed: the spectrum of `f − S_n f`.
    pub fn tail(&self, n: usize) -> Result<Self> {
        if n > self.vs.cells() {
            return Err(VilenkinError::Range {
                value: n,
                limit: self.vs.cells() + 1,
            });
        }
        Ok(self.weighted(|j| if j < n { T::zero() } else { T::one() }))
    }

    /// `Σ |f̂(j)|²`
    pub fn energy(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.vs, &other.vs)?;
        Ok(Self {
            vs: self.vs.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        check_same(&self.vs, &other.vs)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// Largest index with a nonzero coefficient, plus one (0 for the zero spectrum).
    pub fn band_limit(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm_sqr() > T::zero())
            .map_or(0, |j| j + 1)
    }
}

/// One radix-`m_k` pass along coordinate `k`, in place.
fn stage<T: Scalar>(
    data: &mut [Complex<T>],
    stride: usize,
    roots: &[Complex<T>],
    conjugate: bool,
    scratch: &mut Vec<Complex<T>>,
) {
    let radix = roots.len();
    let span = radix * stride;
    if radix == 2 {
        for block in data.chunks_mut(span) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        return;
    }
    let root = |e: usize| {
        let w = roots[e % radix];
        if conjugate {
            w.conj()
        } else {
            w
        }
    };
    scratch.resize(radix, czero());
    for block in data.chunks_mut(span) {
        for i in 0..stride {
            for (t, s) in scratch.iter_mut().enumerate() {
                *s = block[i + t * stride];
            }
            for u in 0..radix {
                let mut acc = scratch[0];
                for (t, &s) in scratch.iter().enumerate().skip(1) {
                    acc += s * root(u * t);
                }
                block[i + u * stride] = acc;
            }
        }
    }
}

fn tensor_transform<T: Scalar>(
    data: &mut [Complex<T>],
    vs: &VilenkinStructure,
    roots: &RootTable<T>,
    conjugate: bool,
) {
    let mut scratch = Vec::new();
    for k in 0..vs.resolution() {
        stage(
            data,
            vs.cell_stride(k),
            roots.coordinate(k),
            conjugate,
            &mut scratch,
        );
    }
}

/// `f̂(n) = ∫ f ψ̄_n dμ` by the fast factorized algorithm.
pub fn analyze<T: Scalar>(f: &StepFunction<T>) -> Spectrum<T> {
    let vs = f.structure();
    let roots = RootTable::new(vs);
    let mut work = f.values.clone();
    tensor_transform(&mut work, vs, &roots, true);
    let inv = T::one() / T::of_usize(vs.cells());
    let coeffs = vs
        .digit_reversal_table()
        .into_iter()
        .map(|c| work[c] * inv)
        .collect();
    Spectrum {
        vs: vs.clone(),
        coeffs,
    }
}

/// `Σ_n f̂(n) ψ_n` by the fast factorized algorithm.
pub fn synthesize<T: Scalar>(s: &Spectrum<T>) -> StepFunction<T> {
    let vs = s.structure();
    let roots = RootTable::new(vs);
    let mut work = vec![czero(); vs.cells()];
    for (n, c) in vs.digit_reversal_table().into_iter().enumerate() {
        work[c] = s.coeffs[n];
    }
    tensor_transform(&mut work, vs, &roots, false);
    StepFunction {
        vs: vs.clone(),
        values: work,
    }
}

/// Direct `O(M_N²)` coefficient sum; reference path for the fast transform.
pub fn analyze_naive<T: Scalar>(f: &StepFunction<T>) -> Spectrum<T> {
    let vs = f.structure();
    let coeffs = (0..vs.cells()).map(|n| naive_coefficient(f, n)).collect();
    Spectrum {
        vs: vs.clone(),
        coeffs,
    }
}

/// `f̂(n)` by direct summation over cells.
pub fn naive_coefficient<T: Scalar>(f: &StepFunction<T>, n: usize) -> Complex<T> {
    let vs = f.structure();
    let roots = RootTable::new(vs);
    let nd = vs.index_to_digits(n).expect("index below M_N");
    let strides: Vec<usize> = (0..vs.resolution()).map(|k| vs.cell_stride(k)).collect();
    let mut acc = czero::<T>();
    for (cell, &v) in f.values.iter().enumerate() {
        let mut psi = Complex::new(T::one(), T::zero());
        for (k, &d) in nd.iter().enumerate() {
            if d != 0 {
                let xk = cell / strides[k] % vs.m(k);
                psi *= roots.power(k, d * xk);
            }
        }
        acc += v * psi.conj();
    }
    acc / T::of_usize(vs.cells())
}

/// `S_n f = Σ_{k<n} f̂(k) ψ_k`; `S_0 f = 0`.
pub fn partial_sum<T: Scalar>(s: &Spectrum<T>, n: usize) -> Result<StepFunction<T>> {
    Ok(synthesize(&s.head(n)?))
}

impl<T: Scalar> Spectrum<T> {
    /// Coefficients at or above `n` zeroed: the spectrum of `S_n f`.
    pub fn head(&self, n: usize) -> Result<Self> {
        if n > self.vs.cells() {
            return Err(VilenkinError::Range {
                value: n,
                limit: self.vs.cells() + 1,
            });
        }
        Ok(self.weighted(|j| if j < n { T::one() } else { T::zero() }))
    }
}

/// Spectrum of `σ_n f`: `(1 − j/n) f̂(j)` for `j < n`, zero above.
pub fn fejer_spectrum<T: Scalar>(s: &Spectrum<T>, n: usize) -> Result<Spectrum<T>> {
    if n == 0 {
        return Err(VilenkinError::Undefined("σ_0 is undefined".into()));
    }
    if n > s.vs.cells() {
        return Err(VilenkinError::Range {
            value: n,
            limit: s.vs.cells() + 1,
        });
    }
    let nn = T::of_usize(n);
    Ok(s.weighted(|j| {
        if j < n {
            (nn - T::of_usize(j)) / nn
        } else {
            T::zero()
        }
    }))
}

/// `σ_n f = (1/n) Σ_{k=1}^n S_k f`
pub fn fejer_mean<T: Scalar>(s: &Spectrum<T>, n: usize) -> Result<StepFunction<T>> {
    Ok(synthesize(&fejer_spectrum(s, n)?))
}

/// `(f ∗ g)(x) = ∫ f(t) g(x − t) dμ(t)` through the transform.
pub fn convolve<T: Scalar>(f: &StepFunction<T>, g: &StepFunction<T>) -> Result<StepFunction<T>> {
    check_same(&f.vs, &g.vs)?;
    let (a, b) = (analyze(f), analyze(g));
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x * y).collect();
    Ok(synthesize(&Spectrum {
        vs: f.vs.clone(),
        coeffs,
    }))
}

/// Convolution by direct summation over the group, `O(M_N²)`.
pub fn convolve_direct<T: Scalar>(
    f: &StepFunction<T>,
    g: &StepFunction<T>,
) -> Result<StepFunction<T>> {
    check_same(&f.vs, &g.vs)?;
    let vs = &f.vs;
    let inv = T::one() / T::of_usize(vs.cells());
    Ok(StepFunction::from_fn(vs.clone(), |x| {
        let mut acc = czero::<T>();
        for (t, &ft) in f.values.iter().enumerate() {
            acc += ft * g.values[sub_cells(x, t, vs)];
        }
        acc * inv
    }))
}

/// Martingale level `f^{(n)} = S_{M_n} f`.
pub fn condexp<T: Scalar>(s: &Spectrum<T>, n: usize) -> Result<StepFunction<T>> {
    s.vs.check_depth(n)?;
    partial_sum(s, s.vs.big_m(n))
}

/// `f* = max_{0≤n≤N} |f^{(n)}|`, taking `f` as the finest level of its martingale.
pub fn maximal_of<T: Scalar>(f: &StepFunction<T>) -> StepFunction<T> {
    let vs = f.structure();
    let big_n = vs.resolution();
    let mut best: Vec<T> = f.values.iter().map(|v| v.norm()).collect();
    // Level n is constant on blocks of M_N / M_n cells; build it from level n + 1.
    let mut level: Vec<Complex<T>> = f.values.clone();
    for n in (0..big_n).rev() {
        let m = vs.m(n);
        let inv = T::one() / T::of_usize(m);
        level = level
            .chunks(m)
            .map(|c| c.iter().copied().sum::<Complex<T>>() * inv)
            .collect();
        let block = vs.cells() / vs.big_m(n);
        for (b, v) in level.iter().enumerate() {
            let mag = v.norm();
            for slot in &mut best[b * block..(b + 1) * block] {
                if mag > *slot {
                    *slot = mag;
                }
            }
        }
    }
    StepFunction {
        vs: vs.clone(),
        values: best
            .into_iter()
            .map(|v| Complex::new(v, T::zero()))
            .collect(),
    }
}

pub fn maximal_function<T: Scalar>(s: &Spectrum<T>) -> StepFunction<T> {
    maximal_of(&synthesize(s))
}

/// Weight `(n+1)^{1/p−2} · ln^{2[1/2+p]}(n+1)` of the normalized Fejér maximal operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalWeight {
    pub p: f64,
    pub exponent: f64,
    pub log_power: i32,
}

impl MaximalWeight {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 0.5) {
            return Err(VilenkinError::Exponent(p));
        }
        Ok(Self {
            p,
            exponent: 1.0 / p - 2.0,
            log_power: 2 * (0.5 + p).floor() as i32,
        })
    }

    pub fn at(&self, n: usize) -> f64 {
        let x = (n + 1) as f64;
        x.powf(self.exponent) * x.ln().powi(self.log_power)
    }
}

/// Calls `visit(n, σ_n f)` for `n = 1, .., n_max` in order.
///
/// Partial sums are accumulated one character at a time, so the whole sweep
/// costs `O(n_max · M_N)`.
pub fn for_each_fejer_mean<T: Scalar>(
    s: &Spectrum<T>,
    n_max: usize,
    mut visit: impl FnMut(usize, &[Complex<T>]),
) -> Result<()> {
    let vs = s.structure();
    if n_max > vs.cells() {
        return Err(VilenkinError::Range {
            value: n_max,
            limit: vs.cells() + 1,
        });
    }
    let roots = RootTable::new(vs);
    let cells = vs.cells();
    let mut partial = vec![czero::<T>(); cells];
    let mut running = vec![czero::<T>(); cells];
    let mut mean = vec![czero::<T>(); cells];
    let mut row = vec![czero::<T>(); cells];
    for n in 1..=n_max {
        let c = s.coeffs[n - 1];
        if c != czero() {
            crate::characters::fill_character(n - 1, vs, &roots, &mut row);
            for (p, &r) in partial.iter_mut().zip(&row) {
                *p += c * r;
            }
        }
        let inv = T::one() / T::of_usize(n);
        for ((acc, &p), out) in running.iter_mut().zip(&partial).zip(mean.iter_mut()) {
            *acc += p;
            *out = *acc * inv;
        }
        visit(n, &mean);
    }
    Ok(())
}

/// Pointwise `sup_{1≤n≤n_max} |σ_n f| / weight(n)`.
pub fn weighted_maximal_fejer<T: Scalar>(
    s: &Spectrum<T>,
    p: f64,
    n_max: usize,
) -> Result<StepFunction<T>> {
    let weight = MaximalWeight::new(p)?;
    let mut best = vec![T::zero(); s.vs.cells()];
    for_each_fejer_mean(s, n_max, |n, sigma| {
        let w = T::of(weight.at(n));
        for (b, v) in best.iter_mut().zip(sigma) {
            let r = v.norm() / w;
            if r > *b {
                *b = r;
            }
        }
    })?;
    Ok(StepFunction {
        vs: s.vs.clone(),
        values: best
            .into_iter()
            .map(|v| Complex::new(v, T::zero()))
            .collect(),
    })
}
