//! The tile model for primitive characters: carry-annotated digit-column
//! generators, built-in tables, the compatible-sequence sum, and the
//! two-digit closed form in four variables.

use crate::char_ring::Character;
use crate::schur::{ms, DigitMatrix};
use crate::{Error, Result};

/// In-carry label: either a carry value or the start marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CarryIn {
    Value(i64),
    End,
}

impl std::fmt::Display for CarryIn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CarryIn::Value(c) => write!(f, "{c}"),
            CarryIn::End => write!(f, "END"),
        }
    }
}

/// A concrete tile: out-carry, in-carry, a weakly decreasing digit
/// column, and a sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub c_out: i64,
    pub c_in: CarryIn,
    pub v: Vec<i64>,
    pub eps: i64,
}

/// Linear form `k_coef * k + p_coef * p + constant` in the family
/// parameter `k` and the characteristic `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Affine {
    pub k_coef: i64,
    pub p_coef: i64,
    pub constant: i64,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Affine { k_coef: 0, p_coef: 0, constant: c }
    }

    pub fn eval(&self, k: i64, p: i64) -> i64 {
        self.k_coef * k + self.p_coef * p + self.constant
    }

    /// Parse forms like `0`, `k`, `p-2`, `k+1`.
    pub fn parse(text: &str) -> Result<Affine> {
        let mut out = Affine::default();
        let mut sign = 1i64;
        let mut cur = String::new();
        let flush = |out: &mut Affine, sign: i64, cur: &mut String| -> Result<()> {
            if cur.is_empty() {
                return Ok(());
            }
            match cur.as_str() {
                "k" => out.k_coef += sign,
                "p" => out.p_coef += sign,
                t => {
                    let v: i64 = t
                        .parse()
                        .map_err(|_| Error::BadTile(format!("bad term '{t}'")))?;
                    out.constant += sign * v;
                }
            }
            cur.clear();
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '+' => {
                    flush(&mut out, sign, &mut cur)?;
                    sign = 1;
                }
                '-' => {
                    flush(&mut out, sign, &mut cur)?;
                    sign = -1;
                }
                c if c.is_whitespace() => {}
                c => cur.push(c),
            }
        }
        flush(&mut out, sign, &mut cur)?;
        Ok(out)
    }

    pub fn uses_k(&self) -> bool {
        self.k_coef != 0
    }
}

impl std::fmt::Display for Affine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (coef, name) in [(self.k_coef, "k"), (self.p_coef, "p")] {
            match coef {
                0 => {}
                1 => parts.push(name.to_string()),
                -1 => parts.push(format!("-{name}")),
                c => parts.push(format!("{c}{name}")),
            }
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        let mut s = parts.join("+");
        while let Some(i) = s.find("+-") {
            s.replace_range(i..i + 2, "-");
        }
        write!(f, "{s}")
    }
}

/// A family of tiles with symbolic entries; `k` ranges over
/// `0..=p-1`, or `0..=p-2` when the in-carry is the start marker,
/// restricted to values keeping the column a weakly decreasing vector
/// of base-`p` digits. Rows may override the range endpoints with
/// affine forms in `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileFamily {
    pub c_out: i64,
    pub c_ins: Vec<CarryIn>,
    pub v: Vec<Affine>,
    pub eps: i64,
    pub k_min: Option<Affine>,
    pub k_max: Option<Affine>,
}

/// Expand a family at a concrete characteristic.
pub fn expand_family(family: &TileFamily, p: u64, n: usize) -> Result<Vec<Tile>> {
    if family.v.len() != n {
        return Err(Error::BadTile(format!(
            "family column has {} entries, expected {n}",
            family.v.len()
        )));
    }
    if p < 2 {
        return Err(Error::BadBase(p));
    }
    let p = p as i64;
    let uses_k = family.v.iter().any(Affine::uses_k);
    let mut out = Vec::new();
    for &c_in in &family.c_ins {
        let lo = family.k_min.map(|a| a.eval(0, p)).unwrap_or(0);
        let standard = match c_in {
            CarryIn::End => p - 2,
            CarryIn::Value(_) => p - 1,
        };
        let hi = family.k_max.map(|a| a.eval(0, p)).unwrap_or(standard).min(standard);
        let k_range = if uses_k { lo..=hi } else { lo..=lo.min(hi) };
        for k in k_range {
            let v: Vec<i64> = family.v.iter().map(|a| a.eval(k, p)).collect();
            let digits_ok = v.iter().all(|&x| (0..p).contains(&x));
            let monotone = v.windows(2).all(|w| w[0] >= w[1]);
            if digits_ok && monotone {
                out.push(Tile { c_out: family.c_out, c_in, v, eps: family.eps });
            }
        }
    }
    Ok(out)
}

/// Parse a tileset data file. Returns the number of variables and the
/// symbolic families, in file order.
pub fn parse_tileset(text: &str) -> Result<(usize, Vec<TileFamily>)> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::BadTile(format!("tileset JSON: {e}")))?;
    if v["schema"].as_str() != Some("incidence-tiles-v1") {
        return Err(Error::BadTile("unknown tileset schema".into()));
    }
    let n = v["n"]
        .as_u64()
        .ok_or_else(|| Error::BadTile("missing n".into()))? as usize;
    let mut families = Vec::new();
    for f in v["families"]
        .as_array()
        .ok_or_else(|| Error::BadTile("missing families".into()))?
    {
        let c_out = f["c_out"]
            .as_i64()
            .ok_or_else(|| Error::BadTile("missing c_out".into()))?;
        let raw_ins = match &f["c_in"] {
            serde_json::Value::String(s) => vec![s.clone()],
            serde_json::Value::Array(a) => a
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or_else(|| Error::BadTile("bad c_in entry".into()))
                })
                .collect::<Result<_>>()?,
            _ => return Err(Error::BadTile("bad c_in".into())),
        };
        let c_ins = raw_ins
            .iter()
            .map(|s| {
                if s == "END" {
                    Ok(CarryIn::End)
                } else {
                    s.parse::<i64>()
                        .map(CarryIn::Value)
                        .map_err(|_| Error::BadTile(format!("bad c_in '{s}'")))
                }
            })
            .collect::<Result<_>>()?;
        let v_entries = f["v"]
            .as_array()
            .ok_or_else(|| Error::BadTile("missing v".into()))?
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| Error::BadTile("column entries must be strings".into()))
                    .and_then(Affine::parse)
            })
            .collect::<Result<_>>()?;
        let eps = f["eps"]
            .as_i64()
            .ok_or_else(|| Error::BadTile("missing eps".into()))?;
        let range_bound = |key: &str| -> Result<Option<Affine>> {
            match &f[key] {
                serde_json::Value::Null => Ok(None),
                serde_json::Value::String(s) => {
                    let a = Affine::parse(s)?;
                    if a.uses_k() {
                        return Err(Error::BadTile(format!("{key} must not mention k")));
                    }
                    Ok(Some(a))
                }
                _ => Err(Error::BadTile(format!("bad {key}"))),
            }
        };
        families.push(TileFamily {
            c_out,
            c_ins,
            v: v_entries,
            eps,
            k_min: range_bound("k_min")?,
            k_max: range_bound("k_max")?,
        });
    }
    Ok((n, families))
}

const TILES_N3: &str = include_str!("data/tiles_n3.json");
const TILES_N4: &str = include_str!("data/tiles_n4.json");
const TILES_N6_END: &str = include_str!("data/tiles_n6_end.json");

/// Built-in symbolic families: dedicated tables for `n = 3` and
/// `n = 4` at odd primes, and the simple `p = 2` arrangement for every
/// `n`. At `p = 2` the general tables degenerate (symbolic rows like
/// `(p-2, k, k)` collapse to zero-degree tiles with nonzero carries,
/// which generate spurious sequences), so the dedicated arrangement
/// always wins there.
pub fn builtin_families(n: usize, p: u64) -> Result<Vec<TileFamily>> {
    match (n, p) {
        (_, 2) => Ok(p2_families(n)),
        (3, _) => Ok(parse_tileset(TILES_N3)?.1),
        (4, _) => Ok(parse_tileset(TILES_N4)?.1),
        _ => Err(Error::NoBuiltinTileset { n, p }),
    }
}

/// The simple `p = 2` arrangement for any `n`: even-width blocks of
/// ones with trivial carries, plus the zero start tile.
pub fn p2_families(n: usize) -> Vec<TileFamily> {
    let mut out = Vec::new();
    for c in 0..=(n / 2) {
        let v = (0..n)
            .map(|j| Affine::constant(if j < 2 * c { 1 } else { 0 }))
            .collect();
        out.push(TileFamily {
            c_out: 0,
            c_ins: vec![CarryIn::Value(0)],
            v,
            eps: 1,
            k_min: None,
            k_max: None,
        });
    }
    out.push(TileFamily {
        c_out: 0,
        c_ins: vec![CarryIn::End],
        v: vec![Affine::constant(0); n],
        eps: 1,
        k_min: None,
        k_max: None,
    });
    out
}

/// The known-sketch starting families loaded for `n = 6` (out-carry 2).
pub fn n6_end_families() -> Vec<TileFamily> {
    parse_tileset(TILES_N6_END).expect("bundled tileset parses").1
}

/// Concrete built-in tileset at a given characteristic.
pub fn builtin_tileset(n: usize, p: u64) -> Result<Vec<Tile>> {
    let mut tiles = Vec::new();
    for f in builtin_families(n, p)? {
        tiles.extend(expand_family(&f, p, n)?);
    }
    Ok(tiles)
}

fn zero_tile(n: usize) -> Tile {
    Tile { c_out: 0, c_in: CarryIn::Value(0), v: vec![0; n], eps: 1 }
}

/// Sum over compatible tile sequences: `T_0, T_1, ...` with the
/// in-carry of each tile equal to the out-carry of its successor's
/// predecessor, `T_0` carrying the start marker, almost all tiles the
/// zero tile, and total digit degree `2d - 2`. Each sequence
/// contributes the product of signs times the minimal Schur function
/// of its column matrix.
pub fn tile_sum(tiles: &[Tile], d: i64, p: u64, n: usize) -> Result<Character> {
    if d < 1 {
        return Err(Error::InvalidParameter(format!(
            "tile sum needs a positive degree parameter, got {d}"
        )));
    }
    let target = 2 * d - 2;
    let zero = zero_tile(n);
    // Positions beyond this can only hold zero-degree carry excursions.
    let cap = 3 + (2 * d as u64).ilog(p.max(2)) as usize + 2;
    let mut acc = Character::zero(n);
    let mut cols: Vec<Vec<i64>> = Vec::new();
    dfs(
        tiles, p, n, &zero, cap, CarryIn::End, target, &mut cols, 1, &mut acc,
    )?;
    return Ok(acc);

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        tiles: &[Tile],
        p: u64,
        n: usize,
        zero: &Tile,
        cap: usize,
        need: CarryIn,
        rem: i64,
        cols: &mut Vec<Vec<i64>>,
        sign: i64,
        acc: &mut Character,
    ) -> Result<()> {
        let settled = need == CarryIn::Value(0) && rem == 0;
        if settled {
            // The all-zero tail: emit this sequence.
            let m = DigitMatrix::new(p, cols.clone())?;
            let term = ms(&m)?;
            *acc = &*acc + &term.scale(sign);
        }
        if cols.len() >= cap {
            return Ok(());
        }
        for t in tiles {
            if t.c_in != need {
                continue;
            }
            if settled && t == zero {
                // Choosing the zero tile here is the already-emitted tail.
                continue;
            }
            let w: i64 = t.v.iter().sum();
            if w > rem || (rem - w) % p as i64 != 0 {
                continue;
            }
            cols.push(t.v.clone());
            dfs(
                tiles,
                p,
                n,
                zero,
                cap,
                CarryIn::Value(t.c_out),
                (rem - w) / p as i64,
                cols,
                sign * t.eps,
                acc,
            )?;
            cols.pop();
        }
        Ok(())
    }
}

/// Closed form for two-digit inputs in four variables: six minimal
/// Schur terms in the digits `(d1, d0)`, with out-of-range or
/// non-monotone matrices contributing zero.
pub fn nim_formula_two_digit(d1: i64, d0: i64, p: u64) -> Result<Character> {
    let p_ = p as i64;
    if !(0..p_).contains(&d1) || !(0..p_).contains(&d0) {
        return Err(Error::DigitOutOfRange { digit: if (0..p_).contains(&d0) { d1 } else { d0 }, p });
    }
    if d1 == 0 && d0 == 0 {
        return Err(Error::InvalidParameter("digits must not both be zero".into()));
    }
    let terms: [(i64, [[i64; 2]; 4]); 6] = [
        (1, [[d1, d0 - 1], [d1, d0 - 1], [0, 0], [0, 0]]),
        (1, [[d1 - 1, p_ - 2], [d1 - 1, d0], [1, d0], [0, 0]]),
        (-1, [[d1 - 1, p_ - 3], [d1 - 1, d0], [1, d0], [0, 1]]),
        (1, [[d1 - 1, p_ - 2], [d1 - 1, p_ - 2], [0, d0 + 1], [0, d0 + 1]]),
        (1, [[d1 - 1, d0 - 1], [d1 - 1, d0 - 1], [1, 0], [1, 0]]),
        (1, [[d1 - 2, p_ - 2], [d1 - 2, p_ - 2], [1, d0 + 1], [1, d0 + 1]]),
    ];
    let mut out = Character::zero(4);
    for (sign, rows) in terms {
        if rows.iter().flatten().any(|x| !(0..p_).contains(x)) {
            continue;
        }
        let m = DigitMatrix::from_rows_msd(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?;
        out = &out + &ms(&m)?.scale(sign);
    }
    Ok(out)
}

/// Lift a tile to one more variable by appending a zero digit.
pub fn increment_n(t: &Tile) -> Tile {
    let mut v = t.v.clone();
    v.push(0);
    Tile { c_out: t.c_out, c_in: t.c_in, v, eps: t.eps }
}

/// The dual of a tile: carries complemented in `[0, n-2]` and the
/// column complemented and reversed, with the start-marker variant
/// complementing against `p - 2`. An involution on non-start tiles.
pub fn dual_tile(t: &Tile, n: usize, p: u64) -> Tile {
    let p = p as i64;
    let top = n as i64 - 2;
    match t.c_in {
        CarryIn::Value(c) => Tile {
            c_out: top - t.c_out,
            c_in: CarryIn::Value(top - c),
            v: t.v.iter().rev().map(|&a| p - 1 - a).collect(),
            eps: t.eps,
        },
        CarryIn::End => Tile {
            c_out: top - t.c_out,
            c_in: CarryIn::End,
            v: t.v.iter().rev().map(|&a| p - 2 - a).collect(),
            eps: t.eps,
        },
    }
}

/// All partitions with at most `len` parts, each at most `max`, in
/// size order and then reverse-lexicographic order.
fn bounded_partitions(max: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut i = 0;
    while i < out.len() {
        let base: Vec<i64> = out[i].clone();
        if base.len() < len {
            let hi = base.last().copied().unwrap_or(max);
            for v in 1..=hi {
                let mut ext = base.clone();
                ext.push(v);
                out.push(ext);
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| {
        let (sa, sb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out.dedup();
    out
}

fn conjugate(lambda: &[i64], len: usize) -> Vec<i64> {
    (1..=len as i64)
        .map(|j| lambda.iter().filter(|&&x| x >= j).count() as i64)
        .collect()
}

/// Conjectured parametrization of all start-marker tiles with
/// out-carry `c`: one symbolic family per partition `lambda` with at
/// most `n - 2 - c` parts whose conjugate has at most `c` parts.
pub fn end_tiles(n: usize, c: i64) -> Vec<TileFamily> {
    assert!(c >= 0 && (c as usize) <= n - 2);
    let c_us = c as usize;
    let lam_len = n - 2 - c_us;
    let mut out = Vec::new();
    for lam in bounded_partitions(c, lam_len) {
        let mu = conjugate(&lam, c_us);
        let mut v = Vec::with_capacity(n);
        for j in (0..c_us).rev() {
            v.push(Affine { k_coef: 0, p_coef: 1, constant: -2 - mu[j] });
        }
        v.push(Affine { k_coef: 1, p_coef: 0, constant: c - 1 });
        v.push(Affine { k_coef: 1, p_coef: 0, constant: c - 1 });
        for i in 0..lam_len {
            v.push(Affine::constant(lam.get(i).copied().unwrap_or(0)));
        }
        let size: i64 = lam.iter().sum();
        out.push(TileFamily {
            c_out: c,
            c_ins: vec![CarryIn::End],
            v,
            eps: if size % 2 == 0 { 1 } else { -1 },
            k_min: None,
            k_max: None,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carry::even_carry_poly;
    use crate::schur::schur;

    fn fam(c_out: i64, c_ins: &[&str], v: &[&str], eps: i64) -> TileFamily {
        TileFamily {
            c_out,
            c_ins: c_ins
                .iter()
                .map(|s| {
                    if *s == "END" {
                        CarryIn::End
                    } else {
                        CarryIn::Value(s.parse().unwrap())
                    }
                })
                .collect(),
            v: v.iter().map(|s| Affine::parse(s).unwrap()).collect(),
            eps,
            k_min: None,
            k_max: None,
        }
    }

    #[test]
    fn affine_parsing() {
        assert_eq!(Affine::parse("k").unwrap(), Affine { k_coef: 1, p_coef: 0, constant: 0 });
        assert_eq!(Affine::parse("p-2").unwrap(), Affine { k_coef: 0, p_coef: 1, constant: -2 });
        assert_eq!(Affine::parse("k+1").unwrap(), Affine { k_coef: 1, p_coef: 0, constant: 1 });
        assert_eq!(Affine::parse("0").unwrap(), Affine::constant(0));
        assert!(Affine::parse("q+1").is_err());
        assert_eq!(Affine::parse("p-2").unwrap().to_string(), "p-2");
    }

    #[test]
    fn family_expansion() {
        // Start-marker variants stop one k short.
        let f = fam(0, &["0", "END"], &["k", "k", "0"], 1);
        let tiles = expand_family(&f, 3, 3).unwrap();
        assert_eq!(tiles.len(), 5); // k in {0,1,2} plus k in {0,1} for END
        assert!(tiles.contains(&zero_tile(3)));
        // Weak-decrease pruning can empty a family.
        let f = fam(1, &["0", "END"], &["p-3", "k", "k", "1"], -1);
        assert!(expand_family(&f, 3, 4).unwrap().is_empty());
        // The zero family expands to the zero tile alone.
        let f = fam(0, &["0"], &["0", "0", "0"], 1);
        assert_eq!(expand_family(&f, 5, 3).unwrap(), vec![zero_tile(3)]);
    }

    #[test]
    fn builtin_tables() {
        // Four printed rows; one is split in the bundled data because its
        // start-marker and carry-0 variants need different k ranges.
        assert_eq!(builtin_families(3, 5).unwrap().len(), 5);
        assert_eq!(builtin_families(4, 5).unwrap().len(), 21);
        // p = 2 always uses the simple arrangement.
        assert_eq!(builtin_families(3, 2).unwrap().len(), 3);
        assert_eq!(builtin_families(6, 2).unwrap().len(), 5);
        assert!(matches!(
            builtin_families(5, 3),
            Err(Error::NoBuiltinTileset { n: 5, p: 3 })
        ));
        assert!(!builtin_tileset(4, 3).unwrap().is_empty());
    }

    #[test]
    fn tile_sum_base_cases() {
        let tiles = builtin_tileset(3, 5).unwrap();
        assert_eq!(tile_sum(&tiles, 1, 5, 3).unwrap(), Character::one(3));
        assert!(tile_sum(&tiles, 0, 5, 3).is_err());
    }

    #[test]
    fn tile_sum_matches_even_carry_small() {
        // Tile sums live in the same gauge as the primitive characters:
        // the dual of the even-carry polynomial at n = 3.
        for p in [2u64, 3, 5] {
            let tiles = builtin_tileset(3, p).unwrap();
            for m in 1..(2 * p as i64 * p as i64).min(30) {
                assert_eq!(
                    tile_sum(&tiles, m, p, 3).unwrap(),
                    even_carry_poly(m as u64, p).dual(),
                    "p={p} m={m}"
                );
            }
        }
    }

    #[test]
    fn two_digit_formula_examples() {
        // (d1, d0) = (1, 1): two surviving terms.
        let v = nim_formula_two_digit(1, 1, 5).unwrap();
        let t1 = ms(&DigitMatrix::new(5, vec![vec![0, 0, 0, 0], vec![1, 1, 0, 0]]).unwrap())
            .unwrap();
        let t2 = schur(4, &[3, 3, 2, 2]).unwrap();
        assert_eq!(v, &t1 + &t2);
        // Digit validation.
        assert!(nim_formula_two_digit(5, 0, 5).is_err());
        assert!(nim_formula_two_digit(0, 0, 5).is_err());
    }

    #[test]
    fn increment_and_dual() {
        // Lifting the three-variable families lands inside the
        // four-variable table.
        let n4 = builtin_families(4, 7).unwrap();
        for f3 in builtin_families(3, 7).unwrap() {
            for t in expand_family(&f3, 7, 3).unwrap() {
                let lifted = increment_n(&t);
                let found = n4
                    .iter()
                    .flat_map(|f| expand_family(f, 7, 4).unwrap())
                    .any(|t4| t4 == lifted);
                assert!(found, "lift of {t:?} missing");
            }
        }
        // Duality is an involution on non-start tiles.
        let f = fam(0, &["1"], &["k", "k", "1", "0"], 1);
        for t in expand_family(&f, 5, 4).unwrap() {
            let d = dual_tile(&t, 4, 5);
            assert_eq!(dual_tile(&d, 4, 5), t);
            assert_eq!(d.c_out, 2);
            assert_eq!(d.c_in, CarryIn::Value(1));
            // (p-1, p-2, j, j) shape.
            assert_eq!(d.v[0], 4);
            assert_eq!(d.v[1], 3);
            assert_eq!(d.v[2], d.v[3]);
        }
    }

    #[test]
    fn end_tile_parametrization() {
        // n = 6, c = 2: exactly the six bundled families, in order.
        assert_eq!(end_tiles(6, 2), n6_end_families());
        // n = 4, c = 2: the single start family of the table.
        let got = end_tiles(4, 2);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0], fam(2, &["END"], &["p-2", "p-2", "k+1", "k+1"], 1));
        // n = 3, c = 0: one family of the shifted (k-1, k-1, 0) shape.
        let got = end_tiles(3, 0);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0], fam(0, &["END"], &["k-1", "k-1", "0"], 1));
    }

    #[test]
    fn builtin_signs_are_units() {
        for (n, p) in [(3usize, 5u64), (4, 5), (4, 3), (6, 2)] {
            for t in builtin_tileset(n, p).unwrap() {
                assert!(t.eps == 1 || t.eps == -1);
            }
        }
    }
}
