//! Base-`p` carry combinatorics: carry sequences of multisets, even-carry
//! polynomials (two independent computation routes), and Nim polynomials.

use num_bigint::BigInt;
use num_traits::One;

use crate::char_ring::Character;
use crate::schur::trunc_sym;
use crate::{Error, Result};

/// The sequence of carries `c_1, c_2, ...` produced when summing the
/// multiset `a` in base `p`, computed as floor differences
/// `c_i = floor(S / p^i) - sum_j floor(a_j / p^i)`. Trailing zero
/// carries are trimmed.
pub fn carry_sequence(a: &[u64], p: u64) -> Result<Vec<u64>> {
    if p < 2 {
        return Err(Error::BadBase(p));
    }
    let total: u64 = a.iter().sum();
    let mut out = Vec::new();
    let mut q = p;
    while q <= total {
        let c = total / q - a.iter().map(|&x| x / q).sum::<u64>();
        out.push(c);
        q = q.saturating_mul(p);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// True iff every carry in the base-`p` addition of `a` is even.
pub fn is_even_carry(a: &[u64], p: u64) -> bool {
    assert!(p >= 2, "base must be at least 2");
    carry_sequence(a, p)
        .expect("p >= 2 checked")
        .iter()
        .all(|c| c % 2 == 0)
}

/// The `m`-th even-carry polynomial: the sum of `x^(a1, a2, a3)` over
/// triples with `a1 + a2 + a3 + 1 = m` whose multiset together with 1 is
/// even-carry in base `p`. Lives in three variables; `C_p(0) = 0`.
pub fn even_carry_poly(m: u64, p: u64) -> Character {
    assert!(p >= 2, "base must be at least 2");
    let mut out = Character::zero(3);
    if m == 0 {
        return out;
    }
    let s = m - 1;
    for a1 in 0..=s {
        for a2 in 0..=(s - a1) {
            let a3 = s - a1 - a2;
            if is_even_carry(&[a1, a2, a3, 1], p) {
                out.add_term(vec![a1 as i64, a2 as i64, a3 as i64], BigInt::one());
            }
        }
    }
    out
}

/// The same polynomial from its digit expansion: a sum over carry
/// choices `c_1, ..., c_k` in `{0, 2}`, where the factor at digit `i`
/// is the truncated symmetric function of the column sum
/// `h_i = d_i + p * c_{i+1} - c_i`. When `c_{i+1} = 0` this is the plain
/// one-row Schur function `s_{d_i - c_i}`, and when `c_{i+1} = 2` it is
/// the dual `s_{p-3-d_i+c_i}^dual`. Cross-check route for
/// [`even_carry_poly`].
pub fn even_carry_poly_digits(m: u64, p: u64) -> Character {
    assert!(p >= 2, "base must be at least 2");
    if m == 0 {
        return Character::zero(3);
    }
    let digits = base_p_digits(m, p);
    let k = digits.len() - 1;
    let mut out = Character::zero(3);
    // carries c_0 = 1 and c_{k+1} = 0 are fixed; c_1..c_k range over {0, 2}.
    for mask in 0u32..(1 << k) {
        let carry = |i: usize| -> i64 {
            if i == 0 {
                1
            } else if i > k {
                0
            } else if mask & (1 << (i - 1)) != 0 {
                2
            } else {
                0
            }
        };
        let mut term = Character::one(3);
        for (i, &d) in digits.iter().enumerate() {
            let h = d as i64 + p as i64 * carry(i + 1) - carry(i);
            let f = trunc_sym(3, h, p, 1);
            if f.is_zero() {
                term = Character::zero(3);
                break;
            }
            term = &term * &f.frobenius(p, i as u32);
        }
        out = &out + &term;
    }
    out
}

/// Base-`p` digits of `m`, least significant first; `m = 0` gives `[0]`.
pub fn base_p_digits(m: u64, p: u64) -> Vec<u64> {
    if m == 0 {
        return vec![0];
    }
    let mut digits = Vec::new();
    let mut m = m;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    digits
}

/// Nim polynomial `N_n(m)`: the sum of `x^a` over `n`-tuples with
/// `|a| = 2m` and vanishing bitwise XOR.
pub fn nim_poly(n: usize, m: u64) -> Character {
    let mut out = Character::zero(n);
    let mut a = vec![0u64; n];
    nim_enumerate(2 * m, 0, 0, &mut a, &mut out);
    out
}

fn nim_enumerate(rem: u64, acc_xor: u64, i: usize, a: &mut Vec<u64>, out: &mut Character) {
    let n = a.len();
    if i == n - 1 {
        if acc_xor ^ rem == 0 {
            a[i] = rem;
            out.add_term(a.iter().map(|&x| x as i64).collect(), BigInt::one());
        }
        return;
    }
    for v in 0..=rem {
        a[i] = v;
        nim_enumerate(rem - v, acc_xor ^ v, i + 1, a, out);
    }
}
