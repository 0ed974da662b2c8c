//! Exhaustive search for small integer sign representations. Used as an
//! LP-free cross-check of the degree decider.

use signlab::cube::{character_eval, BoolFunction, InputPoint};

/// Whether a polynomial of degree ≤ `d` with integer coefficients in
/// `[-bound, bound]` satisfies `p(x)f(x) ≥ 1` everywhere. The constant term
/// is solved as an interval; the search box doubles up to `bound`.
pub fn integer_representation_exists(f: &BoolFunction, d: usize, bound: i64) -> bool {
    let points = f.len();
    let columns: Vec<Vec<i64>> = (1..points)
        .filter(|t| t.count_ones() as usize <= d)
        .map(|t| (0..points).map(|x| i64::from(character_eval(t, InputPoint(x)))).collect())
        .collect();
    let mut b = 1;
    loop {
        let b_now = b.min(bound);
        if search(f, &columns, b_now, &mut vec![0; points]) {
            return true;
        }
        if b_now == bound {
            return false;
        }
        b *= 2;
    }
}

fn search(f: &BoolFunction, columns: &[Vec<i64>], b: i64, partial: &mut [i64]) -> bool {
    let Some((col, rest)) = columns.split_first() else {
        let (mut lo, mut hi) = (-b, b);
        for (x, r) in partial.iter().enumerate() {
            if f.value(x) == 1 {
                lo = lo.max(1 - r);
            } else {
                hi = hi.min(-1 - r);
            }
        }
        return lo <= hi;
    };
    for c in -b..=b {
        partial.iter_mut().zip(col).for_each(|(p, m)| *p += c * m);
        let found = search(f, rest, b, partial);
        partial.iter_mut().zip(col).for_each(|(p, m)| *p -= c * m);
        if found {
            return true;
        }
    }
    false
}
