//! Block composition f∘gⁿ and composition of dual witnesses.
//!
//! Variables are block-major: block `i` (0-based) of the composed input
//! occupies mask bits `i·m … i·m + m − 1`, so `x = (x¹, …, xⁿ)`.
//!
//! Given a witness `p` for `deg_α(f) ≥ d_f` and a sign-degree witness `q`
//! for `deg_∞(g) ≥ d_g ≥ 1`, write `q = g·μ` with `μ ≥ 0`. Then
//!
//! ```text
//! h(x) = 2ⁿ · p(g(x¹), …, g(xⁿ)) · ∏ᵢ μ(xⁱ)
//! ```
//!
//! is a witness for `deg_α(f∘gⁿ) ≥ d_f·d_g`. Each side of μ carries mass
//! exactly 1/2, which makes `⟨f∘gⁿ, h⟩ = ⟨f, p⟩` and `ℓ₁(h) = ℓ₁(p)`.
//! Here `h` is materialized and every condition is checked from scratch.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cube::{check_arity, BoolFunction, Rational, RationalTable};
use crate::degree::{approx_degree, sign_degree, verify_dual_witness, Alpha, DualWitness};
use crate::error::{Error, Result};

/// Largest composed arity accepted by [`compose_functions`].
pub const MAX_COMPOSED_ARITY: usize = 20;

/// Output of g on each block of a composed input, as a mask over the blocks.
fn block_pattern(g: &BoolFunction, n: usize, x: usize) -> usize {
    let m = g.arity();
    let block_mask = (1usize << m) - 1;
    (0..n)
        .filter(|&i| g.is_true(x >> (i * m) & block_mask))
        .fold(0, |acc, i| acc | 1 << i)
}

fn check_composed_arity(n: usize, m: usize) -> Result<usize> {
    let arity = n * m;
    if arity > MAX_COMPOSED_ARITY {
        return Err(Error::ArityOverflow { arity, max: MAX_COMPOSED_ARITY });
    }
    check_arity(arity)?;
    Ok(arity)
}

/// `(f∘gⁿ)(x) = f(g(x¹), …, g(xⁿ))` on `n·m` variables.
pub fn compose_functions(f: &BoolFunction, g: &BoolFunction) -> Result<BoolFunction> {
    let n = f.arity();
    let arity = check_composed_arity(n, g.arity())?;
    Ok(BoolFunction::from_predicate(arity, |x| f.is_true(block_pattern(g, n, x))))
}

/// `f^(1) = f`, `f^(k) = f ∘ (f^(k−1))ⁿ`.
pub fn iterate_compose(f: &BoolFunction, k: u32) -> Result<BoolFunction> {
    if k == 0 {
        return Err(Error::Format("iteration count must be at least 1".into()));
    }
    let mut acc = f.clone();
    for _ in 1..k {
        acc = compose_functions(f, &acc)?;
    }
    Ok(acc)
}

fn reject(w: &DualWitness, g: &BoolFunction, alpha: &Alpha, role: &str) -> Result<()> {
    let report = verify_dual_witness(g, w, alpha);
    if !report.ok() {
        let why: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidWitness(format!("{role} witness: {}", why.join("; "))));
    }
    Ok(())
}

/// μ = g·q for a verified sign-degree witness q of g with claimed degree ≥ 1.
pub fn mu_factor(g: &BoolFunction, q: &DualWitness) -> Result<RationalTable> {
    if !q.alpha.is_infinite() {
        return Err(Error::InvalidWitness("inner witness must be a sign-degree (α = ∞) witness".into()));
    }
    if q.claimed_degree == 0 {
        return Err(Error::TrivialCase);
    }
    reject(q, g, &Alpha::Infinity, "inner")?;
    let mu = q.table.times_bool(g)?;
    if let Some(mask) = mu.entries().iter().position(Signed::is_negative) {
        return Err(Error::InvalidWitness(format!("g(x)q(x) < 0 at mask {mask}")));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let (t, f) = half_masses(g, &mu);
    if t != half || f != half {
        return Err(Error::InvalidWitness(format!("μ mass split {t} / {f}, expected 1/2 each")));
    }
    Ok(mu)
}

/// (Σ_{g(y)=-1} μ(y), Σ_{g(y)=+1} μ(y)).
pub fn half_masses(g: &BoolFunction, mu: &RationalTable) -> (Rational, Rational) {
    let mut on_true = Rational::zero();
    let mut on_false = Rational::zero();
    for (y, v) in mu.entries().iter().enumerate() {
        if g.is_true(y) {
            on_true += v;
        } else {
            on_false += v;
        }
    }
    (on_true, on_false)
}

/// Builds and verifies the composed witness for `deg_α(f∘gⁿ) ≥ d_f·d_g`.
pub fn compose_witnesses(
    f: &BoolFunction,
    g: &BoolFunction,
    p: &DualWitness,
    q: &DualWitness,
) -> Result<DualWitness> {
    let alpha = p.alpha.clone();
    reject(p, f, &alpha, "outer")?;
    let mu = mu_factor(g, q)?;
    let n = f.arity();
    let m = g.arity();
    let arity = check_composed_arity(n, m)?;

    let scale = Rational::from_integer(BigInt::one() << n);
    let block_mask = (1usize << m) - 1;
    let table = RationalTable::from_fn(arity, |x| {
        let mut v = p.table.get(block_pattern(g, n, x)) * &scale;
        for i in 0..n {
            if v.is_zero() {
                break;
            }
            v *= mu.get(x >> (i * m) & block_mask);
        }
        v
    });
    let h = DualWitness {
        claimed_degree: p.claimed_degree * q.claimed_degree,
        alpha,
        table,
    };
    let composed = compose_functions(f, g)?;
    reject(&h, &composed, &h.alpha, "composed")?;
    Ok(h)
}

#[derive(Debug, Clone)]
pub struct SupermultiplicativityReport {
    pub alpha: Alpha,
    /// deg_α(f)
    pub outer: usize,
    /// deg_∞(g)
    pub inner: usize,
    /// deg_α(f∘gⁿ)
    pub actual: usize,
    /// Composed witness when both degrees are at least 1.
    pub certificate: Option<DualWitness>,
    /// Whether the composed witness passed exact verification.
    pub certificate_verified: bool,
}

impl SupermultiplicativityReport {
    pub fn product(&self) -> usize {
        self.outer * self.inner
    }

    pub fn holds(&self) -> bool {
        self.actual >= self.product()
    }

    pub fn slack(&self) -> isize {
        self.actual as isize - self.product() as isize
    }
}

impl fmt::Display for SupermultiplicativityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>5} {:>5} {:>8} {:>7} {:>6} {:>9}",
            "d_f", "d_g", "product", "actual", "slack", "verified"
        )?;
        let verified = match (&self.certificate, self.certificate_verified) {
            (None, _) => "n/a",
            (Some(_), true) => "yes",
            (Some(_), false) => "no",
        };
        writeln!(
            f,
            "{:>5} {:>5} {:>8} {:>7} {:>6} {:>9}",
            self.outer,
            self.inner,
            self.product(),
            self.actual,
            self.slack(),
            verified
        )
    }
}

/// Computes both sides of `deg_α(f∘gⁿ) ≥ deg_α(f)·deg_∞(g)` and the
/// constructive certificate for the right-hand side.
pub fn check_supermultiplicativity(
    f: &BoolFunction,
    g: &BoolFunction,
    alpha: &Alpha,
) -> Result<SupermultiplicativityReport> {
    let outer = approx_degree(f, alpha)?;
    let inner = sign_degree(g)?;
    let composed = compose_functions(f, g)?;
    let actual = approx_degree(&composed, alpha)?.degree;
    let certificate = match (&outer.witness, &inner.witness) {
        (Some(p), Some(q)) => Some(compose_witnesses(f, g, p, q)?),
        _ => None,
    };
    let certificate_verified = certificate
        .as_ref()
        .is_some_and(|h| verify_dual_witness(&composed, h, alpha).ok());
    Ok(SupermultiplicativityReport {
        alpha: alpha.clone(),
        outer: outer.degree,
        inner: inner.degree,
        actual,
        certificate,
        certificate_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::correlation;
    use crate::degree::extract_dual_witness;
    use crate::formula::build_minsky_papert;
    use crate::fourier::pure_high_degree;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn chi_witness(n: usize) -> DualWitness {
        DualWitness {
            claimed_degree: n,
            alpha: Alpha::Infinity,
            table: RationalTable::character(n, (1 << n) - 1, &q(1, 1 << n)),
        }
    }

    #[test]
    fn compose_examples() {
        let or_and = compose_functions(&BoolFunction::or(2), &BoolFunction::and(2)).unwrap();
        assert_eq!(or_and.value(0b1111), -1);
        assert_eq!(or_and.value(0b0101), 1);
        assert_eq!(
            compose_functions(&BoolFunction::parity(2), &BoolFunction::parity(2)).unwrap(),
            BoolFunction::parity(4)
        );
        let mp = compose_functions(&BoolFunction::or(2), &BoolFunction::and(4)).unwrap();
        assert_eq!(mp, build_minsky_papert(2).unwrap().to_function(8).unwrap());
    }

    #[test]
    fn arity_overflow() {
        assert!(matches!(
            compose_functions(&BoolFunction::and(3), &BoolFunction::and(7)),
            Err(Error::ArityOverflow { .. })
        ));
        assert!(matches!(
            iterate_compose(&BoolFunction::and(3), 3),
            Err(Error::ArityOverflow { .. })
        ));
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(iterate_compose(&BoolFunction::parity(2), 2).unwrap(), BoolFunction::parity(4));
        let f = BoolFunction::from_bits(2, 0b0110);
        assert_eq!(iterate_compose(&f, 1).unwrap(), f);
        assert_eq!(iterate_compose(&BoolFunction::and(2), 2).unwrap(), BoolFunction::and(4));
        assert_eq!(iterate_compose(&BoolFunction::and(2), 3).unwrap(), BoolFunction::and(8));
    }

    #[test]
    fn mu_of_parity_witness_is_uniform() {
        let g = BoolFunction::parity(2);
        let mu = mu_factor(&g, &chi_witness(2)).unwrap();
        assert!(mu.entries().iter().all(|v| *v == q(1, 4)));
        assert_eq!(half_masses(&g, &mu), (q(1, 2), q(1, 2)));
    }

    #[test]
    fn mu_rejects_bad_witnesses() {
        let g = BoolFunction::parity(2);
        let t = RationalTable::new(2, vec![q(1, 2), q(0, 1), q(0, 1), q(1, 2)]).unwrap();
        let bad = DualWitness { claimed_degree: 2, alpha: Alpha::Infinity, table: t };
        // Orthogonal to χ_{1} and χ_{2} but not to χ_∅.
        let err = mu_factor(&g, &bad).unwrap_err();
        assert!(matches!(&err, Error::InvalidWitness(msg) if msg.contains("T = {}")), "{err}");

        let trivial = DualWitness { claimed_degree: 0, ..chi_witness(2) };
        assert_eq!(mu_factor(&g, &trivial), Err(Error::TrivialCase));

        let finite = DualWitness { alpha: Alpha::integer(2).unwrap(), ..chi_witness(2) };
        assert!(matches!(mu_factor(&g, &finite), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn xor_compose_xor() {
        let g = BoolFunction::parity(2);
        let h = compose_witnesses(&g, &g, &chi_witness(2), &chi_witness(2)).unwrap();
        assert_eq!(h.claimed_degree, 4);
        assert_eq!(h.table, RationalTable::character(4, 0b1111, &q(1, 16)));
    }

    #[test]
    fn or_compose_xor() {
        let f = BoolFunction::or(2);
        let g = BoolFunction::parity(2);
        let p = extract_dual_witness(&f, 0, &Alpha::Infinity).unwrap();
        let h = compose_witnesses(&f, &g, &p, &chi_witness(2)).unwrap();
        assert_eq!(h.claimed_degree, 2);
        assert!(pure_high_degree(&h.table).unwrap() >= 2);
        let composed = compose_functions(&f, &g).unwrap();
        assert_eq!(correlation(&composed, &h.table).unwrap(), correlation(&f, &p.table).unwrap());
    }

    #[test]
    fn supermultiplicativity_examples() {
        let r = check_supermultiplicativity(&BoolFunction::or(2), &BoolFunction::and(2), &Alpha::Infinity)
            .unwrap();
        assert_eq!((r.outer, r.inner), (1, 1));
        assert!(r.holds() && r.certificate_verified);

        let x = BoolFunction::parity(2);
        let r = check_supermultiplicativity(&x, &x, &Alpha::Infinity).unwrap();
        assert_eq!((r.product(), r.actual, r.slack()), (4, 4, 0));

        let r = check_supermultiplicativity(&BoolFunction::or(2), &BoolFunction::and(4), &Alpha::Infinity)
            .unwrap();
        assert_eq!((r.product(), r.actual), (1, 2));
        assert!(r.certificate_verified);
        assert!(r.to_string().contains("slack"));
    }

    #[test]
    fn trivial_inner_has_no_certificate() {
        let r = check_supermultiplicativity(
            &BoolFunction::and(2),
            &BoolFunction::constant(2, 1),
            &Alpha::Infinity,
        )
        .unwrap();
        assert_eq!(r.inner, 0);
        assert!(r.certificate.is_none() && r.holds());
    }
}
