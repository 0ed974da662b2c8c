//! Oracles shared by the integration tests. Nothing here calls the LP.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signlab::cube::{BoolFunction, Rational};
use signlab::degree::{Alpha, DualWitness, SignRepresentation};

/// χ_T(x) from first principles: the product of coordinates in T, where
/// coordinate i is -1 iff bit i of x is set.
pub fn chi(t: usize, x: usize) -> i64 {
    let mut v = 1;
    for i in 0..usize::BITS as usize {
        if t >> i & 1 == 1 && x >> i & 1 == 1 {
            v = -v;
        }
    }
    v
}

fn monomial_degree(t: usize) -> usize {
    (0..usize::BITS as usize).filter(|i| t >> i & 1 == 1).count()
}

/// `p(x)f(x) ≥ 1` everywhere (and `≤ α` if finite), with `deg p ≤ bound`.
pub fn representation_holds(f: &BoolFunction, rep: &SignRepresentation, alpha: &Alpha) -> bool {
    if rep.arity != f.arity() || rep.coeffs.keys().any(|&t| monomial_degree(t) > rep.degree_bound) {
        return false;
    }
    (0..1usize << f.arity()).all(|x| {
        let p: Rational = rep
            .coeffs
            .iter()
            .map(|(&t, c)| c * Rational::from_integer(chi(t, x).into()))
            .sum();
        let pf = p * Rational::from_integer(i64::from(f.value(x)).into());
        pf >= Rational::one()
            && match alpha {
                Alpha::Infinity => true,
                Alpha::Finite(a) => &pf <= a,
            }
    })
}

/// Unit ℓ₁ mass, correlation at least the α-threshold, and
/// `Σ_x p(x)χ_T(x) = 0` for every `|T| <` the claimed degree.
pub fn witness_holds(f: &BoolFunction, w: &DualWitness, alpha: &Alpha) -> bool {
    let n = f.arity();
    if w.table.arity() != n {
        return false;
    }
    let p = w.table.entries();
    let l1: Rational = p.iter().map(|v| v.abs()).sum();
    let corr: Rational = (0..1usize << n)
        .map(|x| &p[x] * Rational::from_integer(i64::from(f.value(x)).into()))
        .sum();
    let threshold = match alpha {
        Alpha::Infinity => Rational::one(),
        Alpha::Finite(a) => (a - Rational::one()) / (a + Rational::one()),
    };
    let orthogonal = (0..1usize << n)
        .filter(|&t| monomial_degree(t) < w.claimed_degree)
        .all(|t| {
            (0..1usize << n)
                .map(|x| &p[x] * Rational::from_integer(chi(t, x).into()))
                .sum::<Rational>()
                .is_zero()
        });
    l1.is_one() && corr >= threshold && orthogonal
}

/// Whether some polynomial of degree ≤ d with integer coefficients in
/// `[-bound, bound]` sign-represents f, by exhaustive search. The constant
/// coefficient is solved as an interval rather than enumerated; boxes grow
/// by doubling so representable functions are found cheaply.
pub fn integer_representation_exists(f: &BoolFunction, d: usize, bound: i64) -> bool {
    let n = f.arity();
    let points = 1usize << n;
    let monomials: Vec<Vec<i64>> = (1..points)
        .filter(|&t| monomial_degree(t) <= d)
        .map(|t| (0..points).map(|x| chi(t, x)).collect())
        .collect();
    let values: Vec<i64> = (0..points).map(|x| i64::from(f.value(x))).collect();

    fn search(k: usize, b: i64, monomials: &[Vec<i64>], values: &[i64], r: &mut [i64]) -> bool {
        if k == monomials.len() {
            // Need c0 with f(x)(c0 + r(x)) ≥ 1 for every x.
            let mut lo = -b;
            let mut hi = b;
            for (x, &fx) in values.iter().enumerate() {
                if fx == 1 {
                    lo = lo.max(1 - r[x]);
                } else {
                    hi = hi.min(-1 - r[x]);
                }
            }
            return lo <= hi;
        }
        for c in -b..=b {
            for (rx, m) in r.iter_mut().zip(&monomials[k]) {
                *rx += c * m;
            }
            let found = search(k + 1, b, monomials, values, r);
            for (rx, m) in r.iter_mut().zip(&monomials[k]) {
                *rx -= c * m;
            }
            if found {
                return true;
            }
        }
        false
    }

    let mut size = 1;
    loop {
        let b = size.min(bound);
        if search(0, b, &monomials, &values, &mut vec![0; points]) {
            return true;
        }
        if b == bound {
            return false;
        }
        size *= 2;
    }
}

/// Uniformly random functions with arity drawn from `1..=max_arity`.
pub fn random_functions(seed: u64, count: usize, max_arity: usize) -> Vec<BoolFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_arity);
            BoolFunction::from_predicate(n, |_| rng.random_bool(0.5))
        })
        .collect()
}

/// Every function of `arity` inputs, by packed truth table.
pub fn all_functions(arity: usize) -> Vec<BoolFunction> {
    (0..1u64 << (1 << arity))
        .map(|bits| BoolFunction::from_bits(arity, bits))
        .collect()
}
