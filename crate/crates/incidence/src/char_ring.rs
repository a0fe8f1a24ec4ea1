//! The character ring `A = (Z[x_1..x_n] / (x_1 ... x_n - 1))^{S_n}`.
//!
//! Elements are kept in a canonical normal form: every stored exponent
//! vector is translated so its minimum entry is 0, and zero coefficients
//! are dropped. Equality of characters is equality of normal forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exponent vector of a monomial `x^e`; length is the number of variables.
pub type Exp = Vec<i64>;

/// Translate an exponent vector so that its minimum entry is 0.
///
/// This is the canonical representative of the class of `e` modulo
/// `x_1 ... x_n = 1`; it is idempotent and constant on translates
/// `e + c * (1, ..., 1)`.
pub fn normalize_exp(e: &mut [i64]) {
    if let Some(&m) = e.iter().min() {
        if m != 0 {
            for x in e {
                *x -= m;
            }
        }
    }
}

/// An element of the character ring, as a finite map from normalized
/// exponent vectors to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    n: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl Character {
    pub fn zero(n: usize) -> Self {
        Character { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Character::monomial(n, vec![0; n], BigInt::one())
    }

    /// Single term `coeff * x^exp` (normalized; dropped if `coeff` is zero).
    pub fn monomial(n: usize, mut exp: Exp, coeff: BigInt) -> Self {
        assert_eq!(exp.len(), n, "exponent length must equal n");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            normalize_exp(&mut exp);
            terms.insert(exp, coeff);
        }
        Character { n, terms }
    }

    /// Accumulate `(exp, coeff)` pairs, normalizing and merging as it goes.
    pub fn from_terms<I>(n: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Exp, BigInt)>,
    {
        let mut c = Character::zero(n);
        for (exp, coeff) in iter {
            c.add_term(exp, coeff);
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Map of normalized exponents to coefficients, in lexicographic order.
    pub fn terms(&self) -> &BTreeMap<Exp, BigInt> {
        &self.terms
    }

    /// Coefficient of `x^exp` (the query is normalized first).
    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        let mut e = exp.to_vec();
        normalize_exp(&mut e);
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Add `coeff * x^exp` in place.
    pub fn add_term(&mut self, mut exp: Exp, coeff: BigInt) {
        assert_eq!(exp.len(), self.n, "exponent length must equal n");
        if coeff.is_zero() {
            return;
        }
        normalize_exp(&mut exp);
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: i64) -> Character {
        self.scale_big(&BigInt::from(c))
    }

    pub fn scale_big(&self, c: &BigInt) -> Character {
        if c.is_zero() {
            return Character::zero(self.n);
        }
        Character {
            n: self.n,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// The involution induced by `x_i -> x_i^{-1}`.
    pub fn dual(&self) -> Character {
        Character::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(e, a)| (e.iter().map(|x| -x).collect(), a.clone())),
        )
    }

    /// `k`-fold Frobenius twist: every exponent is multiplied by `p^k`.
    pub fn frobenius(&self, p: u64, k: u32) -> Character {
        if k == 0 {
            return self.clone();
        }
        let q = (p as i64).pow(k);
        // Scaling by a positive constant preserves min = 0.
        Character {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().map(|x| x * q).collect(), a.clone()))
                .collect(),
        }
    }

    /// True iff coefficients are constant on `S_n`-orbits of exponents.
    pub fn is_symmetric(&self) -> bool {
        let mut orbits: BTreeMap<Exp, (BigInt, usize)> = BTreeMap::new();
        for (e, a) in &self.terms {
            let mut key = e.clone();
            key.sort_unstable_by(|x, y| y.cmp(x));
            match orbits.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((a.clone(), 1));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    if o.get().0 != *a {
                        return false;
                    }
                    o.get_mut().1 += 1;
                }
            }
        }
        // Every orbit must be fully present: as many distinct permutations
        // of the sorted key as the multiplicities allow.
        orbits.iter().all(|(key, (_, seen))| *seen == orbit_size(key))
    }

    /// Expand `coeff * x^exp` to its full `S_n`-orbit (each distinct
    /// permutation once) and add it to `self`.
    pub fn add_orbit(&mut self, exp: &[i64], coeff: &BigInt) {
        assert_eq!(exp.len(), self.n);
        let mut sorted = exp.to_vec();
        sorted.sort_unstable();
        loop {
            self.add_term(sorted.clone(), coeff.clone());
            if !next_permutation(&mut sorted) {
                break;
            }
        }
    }

    /// Render an `n = 3` character in the triangle layout: one row per
    /// exponent of `x_1` (descending), coefficients within a row ordered
    /// by descending exponent of `x_2`, zero entries trimmed at row ends.
    ///
    /// Terms are first lifted to a common homogeneous degree (the largest
    /// degree present); this reproduces the usual printed layouts, which
    /// show one homogeneous representative rather than normal forms.
    pub fn render_triangle(&self) -> Result<String> {
        if self.n != 3 {
            return Err(Error::RequiresN3(self.n));
        }
        if self.terms.is_empty() {
            return Ok("0".to_string());
        }
        let top_deg = self.terms.keys().map(|e| e.iter().sum::<i64>()).max().unwrap();
        let mut rows: BTreeMap<i64, BTreeMap<i64, &BigInt>> = BTreeMap::new();
        for (e, a) in &self.terms {
            let deg: i64 = e.iter().sum();
            if (top_deg - deg) % 3 != 0 {
                return Err(Error::InvalidParameter(
                    "character is not homogeneous modulo x1*x2*x3 = 1".into(),
                ));
            }
            let lift = (top_deg - deg) / 3;
            rows.entry(e[0] + lift).or_default().insert(e[1] + lift, a);
        }
        let mut out = Vec::new();
        let top = *rows.keys().max().unwrap();
        let bottom = *rows.keys().min().unwrap();
        for a1 in (bottom..=top).rev() {
            match rows.get(&a1) {
                None => out.push(String::new()),
                Some(row) => {
                    let hi = *row.keys().max().unwrap();
                    let lo = *row.keys().min().unwrap();
                    let cells: Vec<String> = (lo..=hi)
                        .rev()
                        .map(|a2| match row.get(&a2) {
                            Some(c) => c.to_string(),
                            None => "0".to_string(),
                        })
                        .collect();
                    out.push(cells.join(" "));
                }
            }
        }
        Ok(out.join("\n"))
    }

    /// Canonical JSON form: fixed key order, exponents normalized and in
    /// lexicographic order, no whitespace. Byte-stable across runs.
    pub fn to_canonical_json(&self, p: Option<u64>) -> String {
        let mut s = String::new();
        s.push_str("{\"n\":");
        s.push_str(&self.n.to_string());
        s.push_str(",\"p\":");
        match p {
            Some(p) => s.push_str(&p.to_string()),
            None => s.push_str("null"),
        }
        s.push_str(",\"terms\":[");
        for (i, (e, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str("{\"exp\":[");
            for (j, x) in e.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&x.to_string());
            }
            s.push_str("],\"coeff\":");
            s.push_str(&a.to_string());
            s.push('}');
        }
        s.push_str("]}");
        s
    }

    /// Parse the JSON produced by [`Character::to_canonical_json`]
    /// (coefficients may be numbers or decimal strings).
    pub fn from_json(text: &str) -> Result<Character> {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad character JSON: {e}")))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Character> {
        let bad = |m: &str| Error::InvalidParameter(format!("bad character JSON: {m}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let mut c = Character::zero(n);
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let exp: Exp = t["exp"]
                .as_array()
                .ok_or_else(|| bad("missing exp"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("bad exponent")))
                .collect::<Result<_>>()?;
            let coeff = match &t["coeff"] {
                serde_json::Value::Number(num) => num
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("bad coefficient"))?,
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad coefficient string"))?,
                _ => return Err(bad("bad coefficient")),
            };
            if exp.len() != n {
                return Err(bad("exponent length mismatch"));
            }
            c.add_term(exp, coeff);
        }
        Ok(c)
    }
}

/// Number of distinct permutations of `key` (multinomial coefficient).
fn orbit_size(key: &[i64]) -> usize {
    let n = key.len();
    let mut denom: u128 = 1;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && key[j] == key[i] {
            j += 1;
        }
        denom *= (1..=(j - i) as u128).product::<u128>();
        i = j;
    }
    let fact: u128 = (1..=n as u128).product();
    (fact / denom) as usize
}

/// Advance to the next permutation in lexicographic order, false at the last.
fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character(n={}, {} terms: ", self.n, self.terms.len())?;
        for (i, (e, a)) in self.terms.iter().take(8).enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{a}*x^{e:?}")?;
        }
        if self.terms.len() > 8 {
            write!(f, " + ...")?;
        }
        write!(f, ")")
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        assert_eq!(self.n, rhs.n, "mismatched number of variables");
        let mut out = self.clone();
        for (e, a) in &rhs.terms {
            out.add_term(e.clone(), a.clone());
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        assert_eq!(self.n, rhs.n, "mismatched number of variables");
        let mut out = self.clone();
        for (e, a) in &rhs.terms {
            out.add_term(e.clone(), -a);
        }
        out
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        assert_eq!(self.n, rhs.n, "mismatched number of variables");
        // Convolve over the smaller factor on the outside.
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Character::zero(self.n);
        for (e1, a1) in &small.terms {
            for (e2, a2) in &big.terms {
                let e: Exp = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, a1 * a2);
            }
        }
        out
    }
}

/// True iff every stored coefficient is 1 (a sum of distinct monomials).
pub fn is_multiplicity_free(c: &Character) -> bool {
    c.terms().values().all(|a| a.is_one())
}

/// Largest coefficient in absolute value (zero for the zero character).
pub fn max_abs_coeff(c: &Character) -> BigInt {
    c.terms()
        .values()
        .map(|a| a.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, e: &[i64]) -> Character {
        Character::monomial(n, e.to_vec(), BigInt::one())
    }

    #[test]
    fn normalize_subtracts_min() {
        let mut e = vec![4, 5, 7];
        normalize_exp(&mut e);
        assert_eq!(e, vec![0, 1, 3]);
        let mut z = vec![0, 0, 0];
        normalize_exp(&mut z);
        assert_eq!(z, vec![0, 0, 0]);
        let mut c = vec![-2, -2, -2];
        normalize_exp(&mut c);
        assert_eq!(c, vec![0, 0, 0]);
        // Idempotent and constant on (1,...,1)-translates.
        let mut a = vec![3, 1, 8];
        normalize_exp(&mut a);
        let first = a.clone();
        normalize_exp(&mut a);
        assert_eq!(a, first);
        let mut b = vec![3 + 11, 1 + 11, 8 + 11];
        normalize_exp(&mut b);
        assert_eq!(b, first);
    }

    #[test]
    fn ring_identities() {
        let one = Character::one(3);
        let s1 = &(&x(3, &[1, 0, 0]) + &x(3, &[0, 1, 0])) + &x(3, &[0, 0, 1]);
        assert_eq!(&one * &s1, s1);
        // (x1+x2+x3)^2 = sum x_i^2 + 2 sum_{i<j} x_i x_j
        let sq = &s1 * &s1;
        assert_eq!(sq.coeff(&[2, 0, 0]), BigInt::from(1));
        assert_eq!(sq.coeff(&[1, 1, 0]), BigInt::from(2));
        assert_eq!(sq.num_terms(), 6);
        // c - c = 0
        assert!((&s1 + &s1.scale(-1)).is_zero());
        // commutative, associative on a messy example
        let a = &sq + &x(3, &[5, 1, 0]).scale(3);
        let b = &s1 + &one.scale(-4);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a * &b) * &sq, &a * &(&b * &sq));
    }

    #[test]
    fn dual_is_involution_and_ring_map() {
        let one = Character::one(3);
        assert_eq!(one.dual(), one);
        let s1 = Character::from_terms(
            3,
            [
                (vec![1, 0, 0], BigInt::one()),
                (vec![0, 1, 0], BigInt::one()),
                (vec![0, 0, 1], BigInt::one()),
            ],
        );
        let e2 = Character::from_terms(
            3,
            [
                (vec![1, 1, 0], BigInt::one()),
                (vec![1, 0, 1], BigInt::one()),
                (vec![0, 1, 1], BigInt::one()),
            ],
        );
        assert_eq!(s1.dual(), e2);
        assert_eq!(e2.dual(), s1);
        let prod = &s1 * &e2;
        assert_eq!(prod.dual(), &s1.dual() * &e2.dual());
    }

    #[test]
    fn frobenius_is_ring_hom() {
        let s1 = Character::from_terms(
            3,
            [
                (vec![1, 0, 0], BigInt::one()),
                (vec![0, 1, 0], BigInt::one()),
                (vec![0, 0, 1], BigInt::one()),
            ],
        );
        assert_eq!(s1.frobenius(2, 0), s1);
        assert_eq!(Character::one(3).frobenius(5, 3), Character::one(3));
        let sq = &s1 * &s1;
        assert_eq!(sq.frobenius(3, 2), &s1.frobenius(3, 2) * &s1.frobenius(3, 2));
    }

    #[test]
    fn symmetry_check() {
        assert!(Character::one(3).is_symmetric());
        assert!(!x(3, &[1, 0, 0]).is_symmetric());
        let mut c = Character::zero(4);
        c.add_orbit(&[2, 1, 0, 0], &BigInt::from(7));
        assert!(c.is_symmetric());
        assert_eq!(c.num_terms(), 12);
        // Break one coefficient.
        c.add_term(vec![2, 1, 0, 0], BigInt::one());
        assert!(!c.is_symmetric());
    }

    #[test]
    fn triangle_of_single_term() {
        assert_eq!(Character::one(3).render_triangle().unwrap(), "1");
        assert!(Character::one(4).render_triangle().is_err());
    }

    #[test]
    fn triangle_row_order_matches_shorthand() {
        // 4 x_1 + 5 x_2 + 7 x_3 renders as "4" over "5 7".
        let c = Character::from_terms(
            3,
            [
                (vec![1, 0, 0], BigInt::from(4)),
                (vec![0, 1, 0], BigInt::from(5)),
                (vec![0, 0, 1], BigInt::from(7)),
            ],
        );
        assert_eq!(c.render_triangle().unwrap(), "4\n5 7");
    }

    #[test]
    fn canonical_json_is_stable() {
        let mut c = Character::zero(3);
        c.add_orbit(&[1, 1, 0], &BigInt::from(2));
        let j = c.to_canonical_json(Some(2));
        assert_eq!(
            j,
            "{\"n\":3,\"p\":2,\"terms\":[{\"exp\":[0,1,1],\"coeff\":2},\
             {\"exp\":[1,0,1],\"coeff\":2},{\"exp\":[1,1,0],\"coeff\":2}]}"
        );
        assert_eq!(Character::from_json(&j).unwrap(), c);
        assert!(Character::zero(3).to_canonical_json(None).contains("\"p\":null"));
    }
}
