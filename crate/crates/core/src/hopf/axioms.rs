//! Exhaustive and randomized verification of the Hopf algebra identities.
//!
//! Each identity is checked exhaustively over every tuple of permutations up
//! to a per-identity grade cutoff, and by seeded random spot checks above it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::*;
use crate::perm::Permutation;
use crate::scalar::binomial;

/// Largest `k + ℓ + m` checked exhaustively for associativity.
pub const ASSOCIATIVITY_CUTOFF: usize = 6;
/// Largest grade checked exhaustively for coassociativity and the counit.
pub const COASSOCIATIVITY_CUTOFF: usize = 5;
/// Largest `k + ℓ` checked exhaustively for bialgebra compatibility.
pub const BIALGEBRA_CUTOFF: usize = 4;
/// Largest `k + ℓ` for the product conjugation identity.
pub const CONJUGATION_PRODUCT_CUTOFF: usize = 6;
/// Largest grade for the coproduct conjugation identity.
pub const CONJUGATION_COPRODUCT_CUTOFF: usize = 5;
/// Largest grade probed for the duality pairing.
pub const DUALITY_CUTOFF: usize = 4;

type Coeff = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Both,
    Star,
    StarPrime,
}

impl Selection {
    pub fn structures(self) -> Vec<Structure> {
        match self {
            Selection::Both => Structure::BOTH.to_vec(),
            Selection::Star => vec![Structure::Star],
            Selection::StarPrime => vec![Structure::StarPrime],
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub max_grade: usize,
    pub selection: Selection,
    pub seed: u64,
    /// Random cases per identity and grade above the exhaustive cutoff.
    pub random_cases: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_grade: ASSOCIATIVITY_CUTOFF,
            selection: Selection::Both,
            seed: 0,
            random_cases: 32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub structure: Option<&'static str>,
    pub grade: usize,
    pub mode: Mode,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Which product/coproduct adjunctions hold at one grade.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityProbe {
    pub grade: usize,
    /// `⟨σ∗τ, ρ⟩ = ⟨σ⊗τ, δ′(ρ)⟩`
    pub star_with_coproduct_prime: bool,
    /// `⟨σ∗′τ, ρ⟩ = ⟨σ⊗τ, δ(ρ)⟩`
    pub star_prime_with_coproduct: bool,
    /// `⟨σ∗τ, ρ⟩ = ⟨σ⊗τ, δ(ρ)⟩`
    pub star_with_coproduct: bool,
    /// `⟨σ∗′τ, ρ⟩ = ⟨σ⊗τ, δ′(ρ)⟩`
    pub star_prime_with_coproduct_prime: bool,
}

impl DualityProbe {
    /// The two cross orientations; the same-structure pairings are reported
    /// but hold trivially in grades 0 and 1, so they are not compared.
    fn orientation(&self) -> [bool; 2] {
        [self.star_with_coproduct_prime, self.star_prime_with_coproduct]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub max_grade: usize,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
    pub duality: Vec<DualityProbe>,
    /// The same cross orientation holds at every probed grade, and at least
    /// one of them holds.
    pub duality_consistent: bool,
    pub passed: bool,
}

impl AxiomReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs every identity selected by `config`.
pub fn check_all(config: &CheckConfig) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    let structures = config.selection.structures();

    for &s in &structures {
        for g in 0..=config.max_grade {
            checks.push(run(g, ASSOCIATIVITY_CUTOFF, "associativity", Some(s), 3, config, &mut rng, |t| {
                associativity(s, &t[0], &t[1], &t[2])
            }));
            checks.push(run(g, ASSOCIATIVITY_CUTOFF, "unit", Some(s), 1, config, &mut rng, |t| {
                unit(s, &t[0])
            }));
            checks.push(run(g, ASSOCIATIVITY_CUTOFF, "term_count", Some(s), 2, config, &mut rng, |t| {
                term_count(s, &t[0], &t[1])
            }));
            checks.push(run(g, COASSOCIATIVITY_CUTOFF, "coassociativity", Some(s), 1, config, &mut rng, |t| {
                coassociativity(s, &t[0])
            }));
            checks.push(run(g, COASSOCIATIVITY_CUTOFF, "counit", Some(s), 1, config, &mut rng, |t| {
                counit_axiom(s, &t[0])
            }));
            checks.push(run(g, BIALGEBRA_CUTOFF, "bialgebra", Some(s), 2, config, &mut rng, |t| {
                bialgebra(s, &t[0], &t[1])
            }));
        }
    }
    if config.selection == Selection::Both {
        for g in 0..=config.max_grade {
            checks.push(run(g, CONJUGATION_PRODUCT_CUTOFF, "conjugation_product", None, 2, config, &mut rng, |t| {
                conjugation_product(&t[0], &t[1])
            }));
            checks.push(run(g, CONJUGATION_COPRODUCT_CUTOFF, "conjugation_coproduct", None, 1, config, &mut rng, |t| {
                conjugation_coproduct(&t[0])
            }));
        }
    }

    let duality: Vec<DualityProbe> = (0..=config.max_grade.min(DUALITY_CUTOFF))
        .map(probe_duality)
        .collect();
    let duality_consistent = duality
        .windows(2)
        .all(|w| w[0].orientation() == w[1].orientation())
        && duality.iter().all(|p| p.orientation().contains(&true));
    let passed = checks.iter().all(|c| c.passed) && duality_consistent;
    AxiomReport {
        max_grade: config.max_grade,
        seed: config.seed,
        checks,
        duality,
        duality_consistent,
        passed,
    }
}

/// Checks one identity at total grade `grade`, exhaustively when the grade is
/// at most `cutoff` and by random tuples otherwise.
#[allow(clippy::too_many_arguments)]
fn run(
    grade: usize,
    cutoff: usize,
    identity: &'static str,
    structure: Option<Structure>,
    arity: usize,
    config: &CheckConfig,
    rng: &mut ChaCha8Rng,
    check: impl Fn(&[Permutation]) -> bool + Sync,
) -> IdentityCheck {
    let (mode, tuples) = if grade <= cutoff {
        (Mode::Exhaustive, all_tuples(grade, arity))
    } else {
        let tuples = (0..config.random_cases)
            .map(|_| random_tuple(grade, arity, rng))
            .collect();
        (Mode::Random, tuples)
    };
    let counterexample = tuples
        .par_iter()
        .find_first(|t| !check(t))
        .map(|t| describe(t));
    IdentityCheck {
        identity,
        structure: structure.map(Structure::name),
        grade,
        mode,
        cases: tuples.len(),
        passed: counterexample.is_none(),
        counterexample,
    }
}

fn describe(t: &[Permutation]) -> String {
    t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

/// Every `arity`-tuple of permutations whose grades sum to `grade`.
fn all_tuples(grade: usize, arity: usize) -> Vec<Vec<Permutation>> {
    let mut out = Vec::new();
    for parts in compositions_with_zeros(grade, arity) {
        let mut acc: Vec<Vec<Permutation>> = vec![Vec::new()];
        for &k in &parts {
            let group: Vec<Permutation> = Permutation::all(k).collect();
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    group.iter().map(move |p| {
                        let mut t = prefix.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .collect();
        }
        out.extend(acc);
    }
    out
}

/// Weak compositions of `total` into `parts` parts, lexicographic.
fn compositions_with_zeros(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions_with_zeros(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn random_tuple(grade: usize, arity: usize, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    // Random weak composition via sorted cut points.
    let mut cuts: Vec<usize> = (0..arity - 1).map(|_| rng.random_range(0..=grade)).collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(grade);
    bounds
        .windows(2)
        .map(|w| random_permutation(w[1] - w[0], rng))
        .collect()
}

pub(crate) fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut image: Vec<u32> = (1..=n as u32).collect();
    image.shuffle(rng);
    Permutation::from_image_unchecked(image)
}

fn basis(p: &Permutation) -> HopfElement<Coeff> {
    HopfElement::basis(p.clone())
}

fn associativity(s: Structure, a: &Permutation, b: &Permutation, c: &Permutation) -> bool {
    let left = s.multiply(&s.product::<Coeff>(a, b), &basis(c));
    let right = s.multiply(&basis(a), &s.product::<Coeff>(b, c));
    left == right
}

fn unit(s: Structure, a: &Permutation) -> bool {
    let e = Permutation::empty();
    let x = basis(a);
    s.product::<Coeff>(&e, a) == x && s.product::<Coeff>(a, &e) == x
}

fn term_count(s: Structure, a: &Permutation, b: &Permutation) -> bool {
    let p = s.product::<Coeff>(a, b);
    let expected = binomial(a.grade() + b.grade(), a.grade());
    num_bigint::BigInt::from(p.len()) == expected && p.iter().all(|(_, c)| *c == 1)
}

fn coassociativity(s: Structure, a: &Permutation) -> bool {
    let d = s.coproduct::<Coeff>(a);
    coproduct_left(s, &d) == coproduct_right(s, &d)
}

fn counit_axiom(s: Structure, a: &Permutation) -> bool {
    let d = s.coproduct::<Coeff>(a);
    let x = basis(a);
    counit_left(&d) == x && counit_right(&d) == x
}

fn bialgebra(s: Structure, a: &Permutation, b: &Permutation) -> bool {
    let left = s.comultiply(&s.product::<Coeff>(a, b));
    let right = s.multiply_tensors(&s.coproduct(a), &s.coproduct(b));
    left == right
}

fn conjugation_product(a: &Permutation, b: &Permutation) -> bool {
    let left: HopfElement<Coeff> = star(a, b);
    let right = theta(&star_prime(&a.inverse(), &b.inverse()));
    left == right
}

fn conjugation_coproduct(a: &Permutation) -> bool {
    let left: Tensor<Coeff> = coproduct(a);
    let right = theta_tensor(&coproduct_prime(&a.inverse()));
    left == right
}

/// Compares `⟨x·y, ρ⟩` with `⟨x⊗y, Δ(ρ)⟩` for every product/coproduct pairing
/// at one grade.
pub fn probe_duality(grade: usize) -> DualityProbe {
    let targets: Vec<Permutation> = Permutation::all(grade).collect();
    let pairs = all_tuples(grade, 2);
    let adjoint = |product: Structure, coproduct: Structure| {
        let deltas: Vec<Tensor<Coeff>> = targets.iter().map(|r| coproduct.coproduct(r)).collect();
        pairs.par_iter().all(|t| {
            let prod = product.product::<Coeff>(&t[0], &t[1]);
            let key = (t[0].clone(), t[1].clone());
            targets
                .iter()
                .zip(&deltas)
                .all(|(rho, delta)| prod.coeff(rho) == delta.coeff(&key))
        })
    };
    DualityProbe {
        grade,
        star_with_coproduct_prime: adjoint(Structure::Star, Structure::StarPrime),
        star_prime_with_coproduct: adjoint(Structure::StarPrime, Structure::Star),
        star_with_coproduct: adjoint(Structure::Star, Structure::Star),
        star_prime_with_coproduct_prime: adjoint(Structure::StarPrime, Structure::StarPrime),
    }
}
