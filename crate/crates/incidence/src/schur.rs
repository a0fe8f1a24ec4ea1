//! Schur functions for generalized partitions, truncated symmetric and
//! Schur functions, and minimal Schur functions of digit matrices.

use num_bigint::BigInt;
use num_traits::One;

use crate::char_ring::{Character, Exp};
use crate::{Error, Result};

fn weakly_decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Schur function `s_lambda` in `n` variables, as a normalized character.
///
/// `lambda` may have up to `n` integer parts. Inputs that are not weakly
/// decreasing after padding with trailing zeros give 0. A weakly
/// decreasing `lambda` with `n` explicit entries may contain negative
/// parts; evaluation shifts all entries upward, which the normalization
/// of the character ring erases again.
pub fn schur(n: usize, lambda: &[i64]) -> Result<Character> {
    if lambda.len() > n {
        return Err(Error::TooManyParts { got: lambda.len(), n });
    }
    let mut lam = lambda.to_vec();
    lam.resize(n, 0);
    if !weakly_decreasing(&lam) {
        return Ok(Character::zero(n));
    }
    let min = *lam.iter().min().unwrap_or(&0);
    if min < 0 {
        for x in &mut lam {
            *x -= min;
        }
    }
    let mut out = Character::zero(n);
    let mut exp = vec![0i64; n];
    gt_branch(&lam, n, &mut exp, &mut out);
    Ok(out)
}

/// Enumerate Gelfand-Tsetlin patterns below `lam`, accumulating one
/// monomial per pattern. `k` is the number of variables still active.
fn gt_branch(lam: &[i64], k: usize, exp: &mut Vec<i64>, out: &mut Character) {
    debug_assert_eq!(lam.len(), k);
    if k == 1 {
        exp[0] = lam[0];
        out.add_term(exp.clone(), BigInt::one());
        return;
    }
    let total: i64 = lam.iter().sum();
    // mu interlaces lam: lam[i] >= mu[i] >= lam[i+1].
    let mut mu = vec![0i64; k - 1];
    interlace(lam, &mut mu, 0, total, k, exp, out);
}

fn interlace(
    lam: &[i64],
    mu: &mut Vec<i64>,
    i: usize,
    total: i64,
    k: usize,
    exp: &mut Vec<i64>,
    out: &mut Character,
) {
    if i == k - 1 {
        let sub: i64 = mu.iter().sum();
        exp[k - 1] = total - sub;
        gt_branch(&mu.clone(), k - 1, exp, out);
        return;
    }
    for v in lam[i + 1]..=lam[i] {
        mu[i] = v;
        interlace(lam, mu, i + 1, total, k, exp, out);
    }
}

/// Elementary symmetric character `e_d` = `s_{(1,...,1)}` with `d` ones.
pub fn elementary(n: usize, d: i64) -> Character {
    if d < 0 || d as usize > n {
        return Character::zero(n);
    }
    schur(n, &vec![1; d as usize]).expect("within range")
}

/// Complete homogeneous character `h_d` = `s_{(d)}`; zero for `d < 0`.
pub fn complete(n: usize, d: i64) -> Character {
    schur(n, &[d]).expect("single part")
}

/// Truncated symmetric function: the sum of monomials `x^a` with
/// `|a| = d` and every digit `0 <= a_i < q`, where `q = p^r`.
pub fn trunc_sym(n: usize, d: i64, p: u64, r: u32) -> Character {
    let q = (p as i64).pow(r);
    let mut out = Character::zero(n);
    if d < 0 || d > n as i64 * (q - 1) {
        return out;
    }
    let mut a = vec![0i64; n];
    bounded_compositions(d, q, 0, &mut a, &mut out);
    out
}

fn bounded_compositions(rem: i64, q: i64, i: usize, a: &mut Vec<i64>, out: &mut Character) {
    let n = a.len();
    if i == n - 1 {
        if rem < q {
            a[i] = rem;
            out.add_term(a.clone(), BigInt::one());
        }
        return;
    }
    let left = (n - 1 - i) as i64 * (q - 1);
    let lo = (rem - left).max(0);
    let hi = (q - 1).min(rem);
    for v in lo..=hi {
        a[i] = v;
        bounded_compositions(rem - v, q, i + 1, a, out);
    }
}

/// The same truncated symmetric function computed from the Koszul-style
/// resolution: an alternating sum of twisted elementary characters times
/// complete homogeneous ones. Kept as a cross-check of [`trunc_sym`].
pub fn trunc_sym_via_resolution(n: usize, d: i64, p: u64, r: u32) -> Character {
    let q = (p as i64).pow(r);
    let mut out = Character::zero(n);
    for i in 0..=n as i64 {
        let h = complete(n, d - i * q);
        if h.is_zero() {
            continue;
        }
        let term = &elementary(n, i).frobenius(p, r) * &h;
        out = if i % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// Truncated Schur function with two indices:
/// `s_a^{(q)} s_b^{(q)} - s_{a+1}^{(q)} s_{b-1}^{(q)}` with `q = p^r`.
pub fn trunc_schur2(n: usize, a: i64, b: i64, p: u64, r: u32) -> Character {
    let t1 = &trunc_sym(n, a, p, r) * &trunc_sym(n, b, p, r);
    let t2 = &trunc_sym(n, a + 1, p, r) * &trunc_sym(n, b - 1, p, r);
    &t1 - &t2
}

/// A matrix of base-`p` digits with one row per variable. Column `i`
/// holds the digits of weight `p^i`, so column 0 is the units column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitMatrix {
    p: u64,
    n: usize,
    cols: Vec<Vec<i64>>,
}

impl DigitMatrix {
    /// Build from columns (units column first). Every entry must be a
    /// base-`p` digit; column monotonicity is checked later by [`ms`].
    pub fn new(p: u64, cols: Vec<Vec<i64>>) -> Result<Self> {
        if p < 2 {
            return Err(Error::BadBase(p));
        }
        let n = cols.first().map(|c| c.len()).unwrap_or(0);
        for col in &cols {
            if col.len() != n {
                return Err(Error::BadTile("ragged digit matrix".into()));
            }
            for &d in col {
                if d < 0 || d >= p as i64 {
                    return Err(Error::DigitOutOfRange { digit: d, p });
                }
            }
        }
        Ok(DigitMatrix { p, n, cols })
    }

    /// Build from rows written most-significant digit first, the way
    /// base-`p` numbers are usually printed.
    pub fn from_rows_msd(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let w = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != w) {
            return Err(Error::BadTile("ragged digit matrix".into()));
        }
        let cols = (0..w)
            .map(|i| rows.iter().map(|r| r[w - 1 - i]).collect())
            .collect();
        DigitMatrix::new(p, cols)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> &[Vec<i64>] {
        &self.cols
    }

    pub fn columns_weakly_decreasing(&self) -> bool {
        self.cols.iter().all(|c| weakly_decreasing(c))
    }

    /// Read each row as a base-`p` number; this is the highest weight of
    /// the associated minimal Schur function.
    pub fn row_reading(&self) -> Exp {
        let mut r = vec![0i64; self.n];
        let mut place = 1i64;
        for col in &self.cols {
            for (j, &d) in col.iter().enumerate() {
                r[j] += d * place;
            }
            place *= self.p as i64;
        }
        r
    }
}

/// Minimal Schur function of a digit matrix: the product over columns
/// `i` of the `i`-fold Frobenius twist of the column's Schur function.
/// Matrices with a non-monotone column evaluate to zero.
pub fn ms(m: &DigitMatrix) -> Result<Character> {
    if !m.columns_weakly_decreasing() {
        return Ok(Character::zero(m.n));
    }
    let mut out = Character::one(m.n);
    for (i, col) in m.cols.iter().enumerate() {
        let s = schur(m.n, col)?;
        out = &out * &s.frobenius(m.p, i as u32);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn schur_small_cases() {
        // s_(1,1,1) = x1 x2 x3 = 1 in the quotient.
        assert_eq!(schur(3, &[1, 1, 1]).unwrap(), Character::one(3));
        // Not weakly decreasing: zero.
        assert!(schur(3, &[2, 3]).unwrap().is_zero());
        // Complete homogeneous of degree 2 in 3 variables: 6 monomials.
        let h2 = schur(3, &[2]).unwrap();
        assert_eq!(h2.num_terms(), 6);
        assert!(h2.is_symmetric());
        // Elementary: sum over subsets.
        let e2 = elementary(3, 2);
        assert_eq!(e2.num_terms(), 3);
        assert_eq!(e2.coeff(&[1, 1, 0]), BigInt::one());
        // Too many parts is an error, not zero.
        assert!(schur(3, &[1, 1, 1, 1]).is_err());
        // Trailing zeros have no effect.
        assert_eq!(schur(3, &[3, 2, 0]).unwrap(), schur(3, &[3, 2]).unwrap());
    }

    #[test]
    fn schur_shift_invariance() {
        // With n explicit entries, adding a constant to all parts is erased.
        let a = schur(3, &[2, 1, 0]).unwrap();
        let b = schur(3, &[0, -1, -2]).unwrap();
        let c = schur(3, &[7, 6, 5]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        // A short partition with a negative part pads to a non-monotone
        // sequence and is therefore zero.
        assert!(schur(3, &[-1]).unwrap().is_zero());
    }

    #[test]
    fn schur_32_triangle() {
        let s = schur(3, &[3, 2]).unwrap();
        assert_eq!(s.num_terms(), 12); // dim 15; one 3-element orbit carries coefficient 2
        assert_eq!(
            s.render_triangle().unwrap(),
            "1 1 1\n1 2 2 1\n1 2 1\n1 1"
        );
        assert!(s.is_symmetric());
    }

    #[test]
    fn jacobi_trudi_two_rows() {
        for n in [3usize, 4] {
            for a in 0i64..=8 {
                for b in 0..=a {
                    let lhs = schur(n, &[a, b]).unwrap();
                    let rhs = &(&schur(n, &[a]).unwrap() * &schur(n, &[b]).unwrap())
                        - &(&schur(n, &[a + 1]).unwrap() * &schur(n, &[b - 1]).unwrap());
                    assert_eq!(lhs, rhs, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn dualization_two_rows_n3() {
        for a in 0i64..=7 {
            for b in 0..=a {
                let lhs = schur(3, &[a, b]).unwrap().dual();
                let rhs = schur(3, &[a, a - b]).unwrap();
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn trunc_sym_basics() {
        // Truncation has no effect when d < q.
        assert_eq!(trunc_sym(3, 3, 2, 2), schur(3, &[3]).unwrap());
        // Out of range: zero.
        assert!(trunc_sym(3, 13, 5, 1).is_zero());
        assert!(trunc_sym(3, -1, 5, 1).is_zero());
        // Duality.
        let q = 4i64;
        let a = 3i64;
        assert_eq!(
            trunc_sym(3, a, 2, 2).dual(),
            trunc_sym(3, 3 * (q - 1) - a, 2, 2)
        );
    }

    #[test]
    fn trunc_sym_resolution_agrees() {
        for (n, p, r) in [(3usize, 2u64, 1u32), (3, 2, 2), (3, 3, 1), (4, 2, 1), (4, 3, 1)] {
            let q = (p as i64).pow(r);
            for d in -1..=(n as i64 * (q - 1) + 1) {
                assert_eq!(
                    trunc_sym(n, d, p, r),
                    trunc_sym_via_resolution(n, d, p, r),
                    "n={n} p={p} r={r} d={d}"
                );
            }
        }
    }

    #[test]
    fn trunc_sym_resolution_single_step() {
        // d = q: only the first two terms of the resolution survive.
        for (n, p, r) in [(3usize, 2u64, 1u32), (4, 3, 1)] {
            let q = (p as i64).pow(r);
            let expect = &complete(n, q) - &elementary(n, 1).frobenius(p, r);
            assert_eq!(trunc_sym_via_resolution(n, q, p, r), expect);
        }
    }

    #[test]
    fn trunc_schur_triangles() {
        // Truncation can raise the highest weight; these shapes are the
        // fixed layouts used by the rendering golden tests.
        let t = trunc_schur2(3, 3, 2, 2, 2);
        assert_eq!(
            t.render_triangle().unwrap(),
            "1\n1 1\n1 1 1\n1 2 2 1\n1 1 2 1 1\n1 1 1 1 1 1"
        );
        let t = trunc_schur2(3, 6, 6, 5, 1);
        assert_eq!(
            t.render_triangle().unwrap(),
            "1\n1 1\n1 1 1 1 1 1 1\n1 1 1 1 1 1\n1 1 1 1 1\n1 1 1 1 1 1\n1 1 1 1 1 1 1\n1 1\n1"
        );
    }

    #[test]
    fn trunc_schur_well_behaved_range() {
        // a = n(q-1) - a' with a', b <= q-1 gives an ordinary Schur function
        // with index (a'+b, a', ..., a'); for n = 3 this is (a'+b, a').
        for (n, p, r) in [(3usize, 2u64, 2u32), (3, 3, 1), (4, 2, 1), (4, 5, 1), (3, 3, 2)] {
            let q = (p as i64).pow(r);
            for ap in 0..q {
                for b in 0..q {
                    let lhs = trunc_schur2(n, n as i64 * (q - 1) - ap, b, p, r);
                    let mut lam = vec![ap; n - 1];
                    lam[0] = ap + b;
                    let rhs = schur(n, &lam).unwrap();
                    assert_eq!(lhs, rhs, "n={n} q={q} a'={ap} b={b}");
                }
            }
        }
    }

    #[test]
    fn trunc_schur_duality() {
        let (n, p, r) = (3usize, 2u64, 2u32);
        let m = n as i64 * 3; // n(q-1)
        for a in 0..=4i64 {
            for b in 0..=a {
                assert_eq!(
                    trunc_schur2(n, a, b, p, r).dual(),
                    trunc_schur2(n, m - b, m - a, p, r)
                );
            }
        }
    }

    #[test]
    fn digit_matrix_validation() {
        assert!(DigitMatrix::new(5, vec![vec![0, 0, 5, 0]]).is_err());
        assert!(DigitMatrix::new(1, vec![vec![0]]).is_err());
        let m = DigitMatrix::from_rows_msd(5, &[vec![1, 0], vec![1, 0], vec![0, 0], vec![0, 0]])
            .unwrap();
        assert_eq!(m.cols(), &[vec![0, 0, 0, 0], vec![1, 1, 0, 0]]);
        assert_eq!(m.row_reading(), vec![5, 5, 0, 0]);
    }

    #[test]
    fn ms_basics() {
        // A single zero column is the unit character.
        let z = DigitMatrix::new(3, vec![vec![0, 0, 0, 0]]).unwrap();
        assert_eq!(ms(&z).unwrap(), Character::one(4));
        // One column, no twist.
        let m = DigitMatrix::new(3, vec![vec![1, 1, 0, 0]]).unwrap();
        assert_eq!(ms(&m).unwrap(), schur(4, &[1, 1]).unwrap());
        // Non-monotone column: zero.
        let m = DigitMatrix::new(3, vec![vec![0, 1, 0, 0]]).unwrap();
        assert!(ms(&m).unwrap().is_zero());
        // Twisted column.
        let m = DigitMatrix::from_rows_msd(5, &[vec![1, 0], vec![1, 0], vec![0, 0], vec![0, 0]])
            .unwrap();
        assert_eq!(
            ms(&m).unwrap(),
            schur(4, &[1, 1]).unwrap().frobenius(5, 1)
        );
    }

    #[test]
    fn ms_highest_weight_is_row_reading() {
        let m = DigitMatrix::from_rows_msd(5, &[vec![2, 3], vec![2, 1], vec![1, 1], vec![0, 0]])
            .unwrap();
        let c = ms(&m).unwrap();
        assert!(!c.is_zero());
        let mut expected = m.row_reading();
        crate::char_ring::normalize_exp(&mut expected);
        let top = c.terms().last_key_value().unwrap().0.clone();
        assert_eq!(top, expected);
        assert!(!c.coeff(&expected).is_zero());
    }
}
