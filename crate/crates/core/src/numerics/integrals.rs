//! Iterated simplex integrals `A(σ)` evaluated as matrices.
//!
//! The exact evaluator handles polynomial `A(t)`: every product of monomials
//! integrates over the simplex to a rational multiple of a power of `t`. The
//! Monte Carlo evaluator samples ordered times uniformly and works for any
//! matrix function of `t`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::matrix::{pairwise_sum, Matrix};
use super::poly::MatPoly;
use crate::perm::Permutation;
use crate::scalar::{Field, Rational, Real};

/// Matrix-valued function of time.
pub type TimeFn<'a, T> = &'a (dyn Fn(T) -> Matrix<T> + Sync);

/// Samples per Monte Carlo block. Each block draws from its own ChaCha8
/// stream, so estimates depend only on `(seed, samples)` and this constant.
pub const MC_BLOCK: u64 = 4096;

/// `∫_{1 > t_1 > ⋯ > t_n > 0} Π_m t_m^{p_m}`, with `powers[m−1] = p_m`,
/// integrated from the innermost variable outwards.
pub fn simplex_weight(powers: &[u32]) -> Rational {
    let mut weight = Rational::from_integer(BigInt::from(1));
    let mut exponent = 0u64;
    for &p in powers.iter().rev() {
        exponent += u64::from(p) + 1;
        weight /= Rational::from_integer(BigInt::from(exponent));
    }
    weight
}

/// Degrees attached to the time variables when position `k` of `σ` takes
/// degree `degrees[k]`.
pub(crate) fn variable_powers(sigma: &Permutation, degrees: &[usize]) -> Vec<u32> {
    let mut powers = vec![0u32; sigma.grade()];
    for (k, &j) in degrees.iter().enumerate() {
        powers[sigma.image()[k] as usize - 1] += j as u32;
    }
    powers
}

/// All `(j_1, …, j_n) ∈ {0..=p}^n` in lexicographic order.
pub(crate) fn degree_assignments(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity((p + 1).pow(n as u32));
    let mut current = vec![0usize; n];
    loop {
        out.push(current.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if current[k] < p {
                current[k] += 1;
                for slot in &mut current[k + 1..] {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// Exact value of `A(σ)` at time `t` for polynomial `A`.
pub fn iterated_integral_exact<T: Real>(sigma: &Permutation, a: &MatPoly<T>, t: T) -> Matrix<T> {
    let n = sigma.grade();
    if n == 0 {
        return Matrix::identity(a.dim());
    }
    let terms: Vec<(Vec<usize>, f64)> = degree_assignments(n, a.degree())
        .into_iter()
        .map(|js| {
            let w = simplex_weight(&variable_powers(sigma, &js)).to_f64();
            (js, w)
        })
        .collect();
    evaluate_assignments(&terms, n, a, t)
}

/// `Σ w · t^{n+Σj} · A_{j_1} ⋯ A_{j_n}` over the given degree assignments;
/// assignments beyond the degree of `a` contribute nothing.
pub(crate) fn evaluate_assignments<T: Real>(
    terms: &[(Vec<usize>, f64)],
    n: usize,
    a: &MatPoly<T>,
    t: T,
) -> Matrix<T> {
    let coeffs = a.coeffs();
    let parts: Vec<Matrix<T>> = terms
        .par_iter()
        .filter(|(js, _)| js.iter().all(|&j| j < coeffs.len()))
        .map(|(js, w)| {
            let total: usize = n + js.iter().sum::<usize>();
            let scalar = T::lit(*w) * t.powi(total as i32);
            let mut product = coeffs[js[0]].clone();
            for &j in &js[1..] {
                product = &product * &coeffs[j];
            }
            product.scale_real(scalar)
        })
        .collect();
    pairwise_sum(a.dim(), parts)
}

/// Monte Carlo estimate with its standard error `sqrt(Σ_entries Var / samples)`,
/// which bounds the Frobenius error in distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate<T> {
    pub value: Matrix<T>,
    pub std_error: T,
    pub samples: u64,
}

struct Moments<T> {
    count: u64,
    mean: Vec<T>,
    m2: Vec<T>,
}

impl<T: Real> Moments<T> {
    fn new(len: usize) -> Self {
        Moments {
            count: 0,
            mean: vec![T::zero(); len],
            m2: vec![T::zero(); len],
        }
    }

    fn push(&mut self, x: &Matrix<T>) {
        self.count += 1;
        let k = T::lit(self.count as f64);
        for (i, z) in x.entries().iter().enumerate() {
            for (slot, v) in [(2 * i, z.re), (2 * i + 1, z.im)] {
                let delta = v - self.mean[slot];
                self.mean[slot] = self.mean[slot] + delta / k;
                self.m2[slot] = self.m2[slot] + delta * (v - self.mean[slot]);
            }
        }
    }

    fn merge(self, other: Moments<T>) -> Moments<T> {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let (na, nb, n) = (
            T::lit(self.count as f64),
            T::lit(other.count as f64),
            T::lit(count as f64),
        );
        let mut mean = self.mean;
        let mut m2 = self.m2;
        for i in 0..mean.len() {
            let delta = other.mean[i] - mean[i];
            mean[i] = mean[i] + delta * (nb / n);
            m2[i] = m2[i] + other.m2[i] + delta * delta * (na * nb / n);
        }
        Moments { count, mean, m2 }
    }
}

/// Monte Carlo estimate of `∫_{t > t_1 > ⋯ > t_n > 0} F(A(t_1), …, A(t_n))`.
///
/// Each sample draws `n` uniforms on `[0, t]`, sorts them descending, and
/// hands `[A(t_1), …, A(t_n)]` to `integrand`. Blocks of [`MC_BLOCK`] samples
/// run in parallel; block `b` uses the ChaCha8 stream `b` of `seed`, and block
/// moments are merged in a fixed pairwise order.
pub fn simplex_mc<T: Real>(
    n: usize,
    a: TimeFn<'_, T>,
    t: T,
    samples: u64,
    seed: u64,
    integrand: &(dyn Fn(&[Matrix<T>]) -> Matrix<T> + Sync),
) -> McEstimate<T> {
    assert!(samples >= 1, "at least one sample is required");
    let probe = integrand(&vec![a(T::zero()); n]);
    let len = 2 * probe.dim() * probe.dim();
    let blocks = samples.div_ceil(MC_BLOCK);
    let mut moments: Vec<Moments<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let size = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut acc = Moments::new(len);
            let mut times = vec![T::zero(); n];
            for _ in 0..size {
                for slot in times.iter_mut() {
                    *slot = T::lit(rng.random::<f64>()) * t;
                }
                times.sort_by(|x, y| y.partial_cmp(x).unwrap());
                let mats: Vec<Matrix<T>> = times.iter().map(|&s| a(s)).collect();
                acc.push(&integrand(&mats));
            }
            acc
        })
        .collect();
    while moments.len() > 1 {
        let mut next = Vec::with_capacity(moments.len().div_ceil(2));
        let mut it = moments.into_iter();
        while let Some(x) = it.next() {
            next.push(match it.next() {
                Some(y) => x.merge(y),
                None => x,
            });
        }
        moments = next;
    }
    let total = moments.pop().unwrap();

    let volume = t.powi(n as i32) / T::lit((1..=n).map(|k| k as f64).product());
    let dim = probe.dim();
    let mean = Matrix::from_fn(dim, |i, j| {
        let k = 2 * (i * dim + j);
        num_complex::Complex::new(total.mean[k], total.mean[k + 1])
    });
    let variance_sum = if total.count > 1 {
        total.m2.iter().fold(T::zero(), |acc, &m| acc + m) / T::lit((total.count - 1) as f64)
    } else {
        T::zero()
    };
    McEstimate {
        value: mean.scale_real(volume),
        std_error: (variance_sum / T::lit(total.count as f64)).sqrt() * volume.abs(),
        samples: total.count,
    }
}

/// Product `A(t_{σ(1)}) ⋯ A(t_{σ(n)})` from the per-variable matrices.
pub(crate) fn word_product<T: Real>(sigma: &Permutation, mats: &[Matrix<T>]) -> Matrix<T> {
    let image = sigma.image();
    let mut product = mats[image[0] as usize - 1].clone();
    for &i in &image[1..] {
        product = &product * &mats[i as usize - 1];
    }
    product
}

/// Monte Carlo estimate of `A(σ)` at time `t`.
pub fn iterated_integral_mc<T: Real>(
    sigma: &Permutation,
    a: TimeFn<'_, T>,
    t: T,
    samples: u64,
    seed: u64,
) -> McEstimate<T> {
    assert!(sigma.grade() >= 1, "grade must be positive");
    simplex_mc(sigma.grade(), a, t, samples, seed, &|mats| word_product(sigma, mats))
}
