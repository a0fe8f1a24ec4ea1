//! Ground truth over `F_p`: the multiplication map by the incidence form
//! on torus weight blocks, cohomology characters from kernel dimensions,
//! kernel bases, Frobenius transport of kernel classes, and primitive
//! quotient characters.
//!
//! Basis elements of the ambient module are monomials `z^b / w^(1+a)`
//! with `a, b >= 0`. Multiplication by `omega = z_1 w_1 + ... + z_n w_n`
//! sends `(a, b)` to the sum of `(a - e_i, b + e_i)` over coordinates
//! with `a_i >= 1`. The torus weight `u = a + b` is preserved, so the
//! map splits into independent blocks, one per weight.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::char_ring::{Character, Exp};
use crate::fp;
use crate::{require_prime, Error, Result};

/// All lattice points `0 <= a <= u` with `|a| = deg`, in lexicographic order.
pub fn lattice_level(u: &[i64], deg: i64) -> Vec<Exp> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    let mut a = vec![0i64; u.len()];
    fn rec(u: &[i64], rem: i64, i: usize, a: &mut Vec<i64>, out: &mut Vec<Exp>) {
        if i == u.len() {
            if rem == 0 {
                out.push(a.clone());
            }
            return;
        }
        let tail: i64 = u[i + 1..].iter().sum();
        let lo = (rem - tail).max(0);
        let hi = u[i].min(rem);
        for v in lo..=hi {
            a[i] = v;
            rec(u, rem - v, i + 1, a, out);
        }
    }
    rec(u, deg, 0, &mut a, &mut out);
    out
}

/// Number of lattice points `0 <= a <= u` with `|a| = deg`.
pub fn count_level(u: &[i64], deg: i64) -> usize {
    if deg < 0 || deg > u.iter().sum::<i64>() {
        return 0;
    }
    let deg = deg as usize;
    let mut counts = vec![0u64; deg + 1];
    counts[0] = 1;
    for &ui in u {
        let ui = ui as usize;
        let mut next = vec![0u64; deg + 1];
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for v in 0..=ui.min(deg - j) {
                next[j + v] += c;
            }
        }
        counts = next;
    }
    counts[deg] as usize
}

/// All nonnegative integer vectors of length `n` with sum `total`.
pub fn compositions(total: i64, n: usize) -> Vec<Exp> {
    let u = vec![total.max(0); n];
    lattice_level(&u, total)
}

/// A basis monomial `z^b / w^(1+a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub a: Exp,
    pub b: Exp,
}

impl BasisElement {
    /// The torus weight `a + b`.
    pub fn weight(&self) -> Exp {
        self.a.iter().zip(&self.b).map(|(x, y)| x + y).collect()
    }
}

/// The multiplication-by-omega map restricted to one torus weight:
/// sources have `|a| = d`, `|b| = e`, `a + b = u`; targets have
/// `|a| = d - 1`. Rows list target indices, every entry is 1.
pub struct WeightBlock {
    pub p: u64,
    pub u: Exp,
    pub d: i64,
    pub e: i64,
    pub source: Vec<Exp>,
    pub target: Vec<Exp>,
    pub rows: Vec<Vec<u32>>,
}

/// Build the weight block for `M_{d,e,u} -> M_{d-1,e+1,u}`.
pub fn weight_block(d: i64, e: i64, u: &[i64], p: u64, n: usize) -> WeightBlock {
    assert_eq!(u.len(), n, "weight length must equal n");
    assert!(u.iter().all(|&x| x >= 0), "weight entries must be nonnegative");
    assert_eq!(u.iter().sum::<i64>(), d + e, "weight must satisfy |u| = d + e");
    let source = lattice_level(u, d);
    let target = lattice_level(u, d - 1);
    let rows = source
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(n);
            let mut t = a.clone();
            for i in 0..n {
                if a[i] >= 1 {
                    t[i] -= 1;
                    let idx = target.binary_search(&t).expect("target point present");
                    row.push(idx as u32);
                    t[i] += 1;
                }
            }
            row
        })
        .collect();
    WeightBlock { p, u: u.to_vec(), d, e, source, target, rows }
}

impl WeightBlock {
    pub fn rank(&self) -> usize {
        fp::rank_sparse_01(self.p, self.target.len(), &self.rows)
    }

    pub fn nullity(&self) -> usize {
        self.source.len() - self.rank()
    }
}

/// Echelonized basis of the kernel of `M_{d,e-1,u} -> M_{d-1,e,u}`.
/// Vector coordinates follow `source` (lexicographic `a`-order).
pub struct KernelBasis {
    pub d: i64,
    pub e: i64,
    pub u: Exp,
    pub source: Vec<Exp>,
    pub vectors: Vec<Vec<u8>>,
}

/// An element of a single weight space of the module, tagged with its
/// bidegree; used to transport kernel classes. Terms are keyed by the
/// `a`-part (the `b`-part is `u - a`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVec {
    pub p: u64,
    pub n: usize,
    /// `|a|` of every term.
    pub a_deg: i64,
    /// `|b|` of every term.
    pub b_deg: i64,
    /// Common torus weight `a + b`.
    pub u: Exp,
    pub terms: BTreeMap<Exp, u64>,
}

impl CycleVec {
    pub fn new(p: u64, a_deg: i64, b_deg: i64, u: Exp) -> Self {
        let n = u.len();
        CycleVec { p, n, a_deg, b_deg, u, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, a: Exp, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() = (*o.get() + c) % self.p;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Multiplication by omega: one step `M_{D,E} -> M_{D-1,E+1}`.
    pub fn apply_omega(&self) -> CycleVec {
        let mut out = CycleVec::new(self.p, self.a_deg - 1, self.b_deg + 1, self.u.clone());
        for (a, &c) in &self.terms {
            let mut t = a.clone();
            for i in 0..self.n {
                if a[i] >= 1 {
                    t[i] -= 1;
                    out.add_term(t.clone(), c);
                    t[i] += 1;
                }
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.apply_omega().is_zero()
    }

    /// Frobenius transport `alpha -> omega^(p-1) F(alpha)` of a kernel
    /// class. `F` sends `z^b / w^(1+a)` to `z^(pb) / w^(p(1+a))`, i.e.
    /// `a -> pa + (p-1)`, `b -> pb`; the result is again a kernel class.
    pub fn frobenius_cycle(&self) -> Result<CycleVec> {
        if !self.is_cycle() {
            return Err(Error::NotInKernel);
        }
        let p = self.p as i64;
        let n = self.n as i64;
        let mut fv = CycleVec::new(
            self.p,
            p * self.a_deg + n * (p - 1),
            p * self.b_deg,
            self.u.iter().map(|&x| p * x + (p - 1)).collect(),
        );
        for (a, &c) in &self.terms {
            fv.add_term(a.iter().map(|&x| p * x + (p - 1)).collect(), c);
        }
        let mut out = fv;
        for _ in 0..(self.p - 1) {
            out = out.apply_omega();
        }
        Ok(out)
    }

    /// Multiply by the monomial `w^alpha z^beta`: terms with `a_i < alpha_i`
    /// in any coordinate are dropped; the `z`-part only shifts the weight.
    pub fn monomial_mult(&self, alpha: &[i64], beta: &[i64]) -> CycleVec {
        assert_eq!(alpha.len(), self.n);
        assert_eq!(beta.len(), self.n);
        assert!(alpha.iter().all(|&x| x >= 0) && beta.iter().all(|&x| x >= 0));
        let mut out = CycleVec::new(
            self.p,
            self.a_deg - alpha.iter().sum::<i64>(),
            self.b_deg + beta.iter().sum::<i64>(),
            self.u
                .iter()
                .zip(alpha.iter().zip(beta))
                .map(|(&x, (&al, &be))| x - al + be)
                .collect(),
        );
        for (a, &c) in &self.terms {
            if a.iter().zip(alpha).all(|(&x, &al)| x >= al) {
                out.add_term(a.iter().zip(alpha).map(|(&x, &al)| x - al).collect(), c);
            }
        }
        out
    }
}

/// On-disk cache of per-weight kernel dimension tables keyed by
/// `(p, n, d, e)`; lets expensive primitive-character runs resume.
pub struct KernelCache {
    root: PathBuf,
}

const CACHE_SCHEMA: &str = "incidence-kdims-v1";

impl KernelCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        KernelCache { root: root.into() }
    }

    fn path(&self, p: u64, n: usize, d: i64, e: i64) -> PathBuf {
        self.root
            .join(format!("p{p}_n{n}"))
            .join(format!("d{d}_e{e}.json"))
    }

    pub fn load(&self, p: u64, n: usize, d: i64, e: i64) -> Option<Vec<(Exp, usize)>> {
        let path = self.path(p, n, d, e);
        let text = std::fs::read_to_string(&path).ok()?;
        let v: serde_json::Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(err) => {
                log::warn!("ignoring unreadable cache file {}: {err}", path.display());
                return None;
            }
        };
        if v["schema"].as_str() != Some(CACHE_SCHEMA) {
            log::warn!("ignoring cache file with unknown schema: {}", path.display());
            return None;
        }
        let mut out = Vec::new();
        for w in v["weights"].as_array()? {
            let u: Exp = w["u"].as_array()?.iter().map(|x| x.as_i64()).collect::<Option<_>>()?;
            let dim = w["dim"].as_u64()? as usize;
            out.push((u, dim));
        }
        Some(out)
    }

    pub fn store(&self, p: u64, n: usize, d: i64, e: i64, dims: &[(Exp, usize)]) {
        let path = self.path(p, n, d, e);
        let write = || -> std::io::Result<()> {
            std::fs::create_dir_all(path.parent().unwrap())?;
            let mut s = String::new();
            s.push_str(&format!(
                "{{\"schema\":\"{CACHE_SCHEMA}\",\"p\":{p},\"n\":{n},\"d\":{d},\"e\":{e},\"weights\":["
            ));
            for (i, (u, dim)) in dims.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str("{\"u\":[");
                for (j, x) in u.iter().enumerate() {
                    if j > 0 {
                        s.push(',');
                    }
                    s.push_str(&x.to_string());
                }
                s.push_str(&format!("],\"dim\":{dim}}}"));
            }
            s.push_str("]}");
            let tmp = path.with_extension("json.tmp");
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(s.as_bytes())?;
            std::fs::rename(&tmp, &path)?;
            Ok(())
        };
        if let Err(err) = write() {
            log::warn!("could not write cache file {}: {err}", path.display());
        }
    }
}

/// Kernel-dimension oracle for fixed `(p, n)`, with an in-memory memo
/// and an optional disk cache.
pub struct Oracle {
    p: u64,
    n: usize,
    memo: Mutex<HashMap<(i64, i64), Arc<Vec<(Exp, usize)>>>>,
    disk: Option<KernelCache>,
    verify_cache: bool,
}

impl Oracle {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        require_prime(p)?;
        if p > 251 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} too large for the byte-entry kernel routines"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidParameter("n must be at least 2".into()));
        }
        Ok(Oracle {
            p,
            n,
            memo: Mutex::new(HashMap::new()),
            disk: None,
            verify_cache: false,
        })
    }

    pub fn with_disk_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.disk = Some(KernelCache::new(dir));
        self
    }

    /// Recompute on every disk-cache hit and panic on disagreement.
    pub fn with_cache_verification(mut self) -> Self {
        self.verify_cache = true;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-weight kernel dimensions of `K(d, e)`: pairs `(u, dim)` with
    /// `|u| = d + e - 1`, only nonzero dimensions, in lexicographic order.
    pub fn kappa_weights(&self, d: i64, e: i64) -> Arc<Vec<(Exp, usize)>> {
        if let Some(hit) = self.memo.lock().unwrap().get(&(d, e)) {
            return hit.clone();
        }
        if let Some(disk) = &self.disk {
            if let Some(dims) = disk.load(self.p, self.n, d, e) {
                if self.verify_cache {
                    let fresh = self.compute_cell(d, e);
                    assert_eq!(
                        fresh, dims,
                        "cache verification failed for p={} n={} d={d} e={e}",
                        self.p, self.n
                    );
                }
                let arc = Arc::new(dims);
                self.memo.lock().unwrap().insert((d, e), arc.clone());
                return arc;
            }
        }
        let dims = self.compute_cell(d, e);
        if let Some(disk) = &self.disk {
            disk.store(self.p, self.n, d, e, &dims);
        }
        let arc = Arc::new(dims);
        self.memo.lock().unwrap().insert((d, e), arc.clone());
        arc
    }

    fn compute_cell(&self, d: i64, e: i64) -> Vec<(Exp, usize)> {
        if d < 0 || e < 1 {
            return Vec::new();
        }
        let weights = compositions(d + e - 1, self.n);
        let mut dims: Vec<(Exp, usize)> = weights
            .into_par_iter()
            .filter_map(|u| {
                let block = weight_block(d, e - 1, &u, self.p, self.n);
                if block.source.is_empty() {
                    return None;
                }
                let nullity = block.nullity();
                (nullity > 0).then_some((u, nullity))
            })
            .collect();
        dims.sort();
        dims
    }

    /// The character `kappa(d, e)` of the kernel representation.
    pub fn kappa(&self, d: i64, e: i64) -> Character {
        let dims = self.kappa_weights(d, e);
        let mut out = Character::zero(self.n);
        for (u, dim) in dims.iter() {
            out.add_term(u.clone(), BigInt::from(*dim));
        }
        out
    }

    /// The character of the cokernel of `M_{d,e-1} -> M_{d-1,e}`. The
    /// cokernel represents a dual space, so its per-weight dimensions
    /// are attached to `x^(-u)`; dualizing gives `kappa(e, d)`.
    pub fn cokernel(&self, d: i64, e: i64) -> Character {
        if e < 1 {
            return Character::zero(self.n);
        }
        let dims = self.kappa_weights(d, e);
        let by_u: HashMap<&Exp, usize> = dims.iter().map(|(u, k)| (u, *k)).collect();
        let mut out = Character::zero(self.n);
        for u in compositions(d + e - 1, self.n) {
            let s = count_level(&u, d);
            let t = count_level(&u, d - 1);
            let nullity = by_u.get(&u).copied().unwrap_or(0);
            // rank = s - nullity, coker = t - rank.
            let coker = (t + nullity).saturating_sub(s);
            if coker > 0 {
                out.add_term(u.iter().map(|&x| -x).collect(), BigInt::from(coker));
            }
        }
        out
    }

    /// Echelonized basis of the kernel of the block at weight `u`.
    pub fn kernel_basis(&self, d: i64, e: i64, u: &[i64]) -> KernelBasis {
        let block = weight_block(d, e - 1, u, self.p, self.n);
        let vectors = fp::left_kernel_sparse_01(self.p, block.target.len(), &block.rows);
        KernelBasis { d, e, u: u.to_vec(), source: block.source, vectors }
    }

    /// Kernel basis vectors at `(d, e, u)` as weight-space elements.
    pub fn kernel_cycles(&self, d: i64, e: i64, u: &[i64]) -> Vec<CycleVec> {
        let kb = self.kernel_basis(d, e, u);
        kb.vectors
            .iter()
            .map(|v| {
                let mut cv = CycleVec::new(self.p, d, e - 1, kb.u.clone());
                for (i, &c) in v.iter().enumerate() {
                    if c != 0 {
                        cv.add_term(kb.source[i].clone(), c as u64);
                    }
                }
                cv
            })
            .collect()
    }

    /// Character of the primitive quotient: per weight, the kernel
    /// dimension minus the dimension spanned inside it by all monomial
    /// multiples of Frobenius transports of lower kernel classes.
    ///
    /// Source bidegrees `(d', e')` come from an empirical vanishing
    /// scan: for each admissible `e'`, `d'` runs upward until
    /// `n + margin` consecutive cells vanish.
    pub fn prim(&self, d: i64, e: i64, margin: usize) -> Character {
        let target = self.kappa_weights(d, e);
        if target.is_empty() {
            return Character::zero(self.n);
        }
        let p = self.p as i64;
        let n = self.n;
        let shift = (p - 1) * (n as i64 - 1);

        // Collect generating images bucketed by target weight.
        let mut buckets: HashMap<Exp, Vec<CycleVec>> = HashMap::new();
        let e_hi = (e - 1).div_euclid(p) + 1;
        for e1 in 1..=e_hi.max(0) {
            for d1 in self.scan_sources(d, e1, margin) {
                let dd = p * d1 + shift;
                let ee = p * e1;
                if dd < d || ee > e {
                    continue;
                }
                let alphas = compositions(dd - d, n);
                let betas = compositions(e - ee, n);
                for (u1, _) in self.kappa_weights(d1, e1).iter() {
                    for cv in self.kernel_cycles(d1, e1, u1) {
                        let fc = cv.frobenius_cycle().expect("kernel basis vector");
                        if fc.is_zero() {
                            continue;
                        }
                        for alpha in &alphas {
                            let wa = fc.monomial_mult(alpha, &vec![0; n]);
                            if wa.is_zero() {
                                continue;
                            }
                            for beta in &betas {
                                let img = wa.monomial_mult(&vec![0; n], beta);
                                buckets.entry(img.u.clone()).or_default().push(img);
                            }
                        }
                    }
                }
            }
        }

        let mut out = Character::zero(n);
        let per_weight: Vec<(Exp, usize)> = target
            .par_iter()
            .map(|(u, nullity)| {
                let rank = match buckets.get(u) {
                    None => 0,
                    Some(imgs) => {
                        let basis = lattice_level(u, d);
                        let rows: Vec<Vec<u8>> = imgs
                            .iter()
                            .map(|img| {
                                let mut row = vec![0u8; basis.len()];
                                for (a, &c) in &img.terms {
                                    let idx =
                                        basis.binary_search(a).expect("image inside weight space");
                                    row[idx] = c as u8;
                                }
                                row
                            })
                            .collect();
                        fp::DenseMat::from_rows(self.p, basis.len(), rows).rank()
                    }
                };
                assert!(
                    rank <= *nullity,
                    "image span exceeds kernel at u={u:?}: rank {rank} > nullity {nullity}"
                );
                (u.clone(), nullity - rank)
            })
            .collect();
        for (u, dim) in per_weight {
            if dim > 0 {
                out.add_term(u, BigInt::from(dim));
            }
        }
        out
    }

    /// Bidegrees `d'` with nonzero kernel at column `e'`, scanning upward
    /// until `n + margin` consecutive zero cells, with a hard cap.
    fn scan_sources(&self, d: i64, e1: i64, margin: usize) -> Vec<i64> {
        let run_needed = self.n + margin;
        let cap = 8 * self.p as i64 * (e1 + 1) + 2 * run_needed as i64;
        let mut found = Vec::new();
        let mut run = 0usize;
        let mut d1 = 0i64;
        while run < run_needed {
            if d1 > cap {
                log::warn!(
                    "vanishing scan for p={} n={} e'={e1} hit the cap d'={cap} without a \
                     zero run of {run_needed}; primitive character at (d={d}, ...) may be \
                     missing generators",
                    self.p,
                    self.n
                );
                break;
            }
            if self.kappa_weights(d1, e1).is_empty() {
                run += 1;
            } else {
                run = 0;
                found.push(d1);
            }
            d1 += 1;
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::schur;
    use num_traits::One;

    #[test]
    fn lattice_levels() {
        let u = vec![1, 1, 0];
        assert_eq!(lattice_level(&u, 1), vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(lattice_level(&u, -1), Vec::<Exp>::new());
        assert_eq!(count_level(&u, 1), 2);
        assert_eq!(count_level(&[5, 5, 5], 7), lattice_level(&[5, 5, 5], 7).len());
        assert_eq!(compositions(2, 3).len(), 6);
    }

    #[test]
    fn weight_block_examples() {
        // d=1, e=0, u = e_1: one source, one target, a bijection.
        let b = weight_block(1, 0, &[1, 0, 0], 2, 3);
        assert_eq!(b.source.len(), 1);
        assert_eq!(b.target.len(), 1);
        assert_eq!(b.rows, vec![vec![0]]);
        // d=0: zero map.
        let b = weight_block(0, 2, &[1, 1, 0], 3, 3);
        assert!(b.rows.iter().all(|r| r.is_empty()));
        // d=1, e=1, u=(1,1,0): both sources hit the single target.
        let b = weight_block(1, 1, &[1, 1, 0], 2, 3);
        assert_eq!(b.source.len(), 2);
        assert_eq!(b.target.len(), 1);
        assert_eq!(b.rows, vec![vec![0], vec![0]]);
        assert_eq!(b.nullity(), 1);
    }

    #[test]
    fn kappa_small_cells() {
        let oracle = Oracle::new(2, 3).unwrap();
        assert_eq!(oracle.kappa(0, 1), Character::one(3));
        assert!(oracle.kappa(1, 1).is_zero());
        // kappa(1,2) at p=2: the orbit of (1,1,0).
        let k12 = oracle.kappa(1, 2);
        assert_eq!(k12.num_terms(), 3);
        assert_eq!(k12.coeff(&[1, 1, 0]), BigInt::one());
        assert!(k12.is_symmetric());
    }

    #[test]
    fn kappa_weight_degrees() {
        // Every pre-normalization weight has size d + e - 1.
        let oracle = Oracle::new(3, 3).unwrap();
        for (d, e) in [(2i64, 2i64), (4, 3), (5, 5)] {
            for (u, dim) in oracle.kappa_weights(d, e).iter() {
                assert_eq!(u.iter().sum::<i64>(), d + e - 1);
                assert!(*dim > 0);
            }
        }
    }

    #[test]
    fn char0_region_small_e() {
        // For e < p the oracle agrees with the characteristic-zero values.
        let oracle = Oracle::new(5, 3).unwrap();
        for d in 0..6i64 {
            for e in 1..5i64 {
                let expect = if d < e {
                    schur(3, &[e - 1, d]).unwrap()
                } else {
                    Character::zero(3)
                };
                assert_eq!(oracle.kappa(d, e), expect, "d={d} e={e}");
            }
        }
    }

    #[test]
    fn cokernel_duality_small() {
        for p in [2u64, 3] {
            let oracle = Oracle::new(p, 3).unwrap();
            for d in 1..6i64 {
                for e in 1..=d {
                    assert_eq!(
                        oracle.cokernel(d, e).dual(),
                        oracle.kappa(e, d),
                        "p={p} d={d} e={e}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_basis_examples() {
        let oracle = Oracle::new(2, 3).unwrap();
        // (1, 2, (1,1,0)): one vector, the sum of the two sources.
        let kb = oracle.kernel_basis(1, 2, &[1, 1, 0]);
        assert_eq!(kb.vectors, vec![vec![1, 1]]);
        // (1, 1, u): empty kernel.
        let kb = oracle.kernel_basis(1, 1, &[1, 0, 0]);
        assert!(kb.vectors.is_empty());
        // (0, 1, 0): the single generator.
        let kb = oracle.kernel_basis(0, 1, &[0, 0, 0]);
        assert_eq!(kb.vectors, vec![vec![1]]);
    }

    #[test]
    fn frobenius_cycle_examples() {
        for (p, n) in [(2u64, 3usize), (3, 3), (3, 4)] {
            let oracle = Oracle::new(p, n).unwrap();
            let cycles = oracle.kernel_cycles(0, 1, &vec![0; n]);
            assert_eq!(cycles.len(), 1);
            let fc = cycles[0].frobenius_cycle().unwrap();
            assert!(!fc.is_zero(), "p={p} n={n}");
            assert!(fc.is_cycle());
            assert_eq!(fc.a_deg, (p as i64 - 1) * (n as i64 - 1));
            assert_eq!(fc.b_deg, p as i64 - 1);
        }
        // The zero vector transports to the zero vector.
        let z = CycleVec::new(3, 1, 1, vec![1, 1, 0]);
        assert!(z.frobenius_cycle().unwrap().is_zero());
    }

    #[test]
    fn frobenius_cycle_rejects_non_kernel() {
        let mut v = CycleVec::new(2, 1, 0, vec![1, 0, 0]);
        v.add_term(vec![1, 0, 0], 1);
        assert!(!v.is_cycle());
        assert!(matches!(v.frobenius_cycle(), Err(Error::NotInKernel)));
    }

    #[test]
    fn monomial_mult_examples() {
        let oracle = Oracle::new(2, 3).unwrap();
        let v = &oracle.kernel_cycles(1, 2, &[1, 1, 0])[0];
        // alpha = beta = 0 is the identity.
        assert_eq!(&v.monomial_mult(&[0, 0, 0], &[0, 0, 0]), v);
        // w-multiplication kills terms whose a-part is too small.
        let dead = oracle.kernel_cycles(0, 1, &[0, 0, 0])[0].monomial_mult(&[1, 0, 0], &[0, 0, 0]);
        assert!(dead.is_zero());
        // Kernel classes stay kernel classes.
        let moved = v.monomial_mult(&[1, 0, 0], &[0, 0, 1]);
        assert!(moved.is_cycle());
    }

    #[test]
    fn prim_first_values() {
        for (p, n) in [(2u64, 3usize), (3, 3), (5, 4)] {
            let oracle = Oracle::new(p, n).unwrap();
            assert_eq!(oracle.prim(0, 1, n), Character::one(n), "p={p} n={n}");
        }
        // At n = 3 the primitive quotient is the dual of the even-carry
        // polynomial in this weight convention.
        let oracle = Oracle::new(3, 3).unwrap();
        assert_eq!(oracle.prim(1, 2, 3), crate::carry::even_carry_poly(2, 3).dual());
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let a = Oracle::new(3, 3).unwrap().with_disk_cache(dir.path());
        let fresh = a.kappa(4, 3);
        drop(a);
        let b = Oracle::new(3, 3)
            .unwrap()
            .with_disk_cache(dir.path())
            .with_cache_verification();
        assert_eq!(b.kappa(4, 3), fresh);
    }
}
