//! Dense row-echelon elimination over small prime fields.
//!
//! Weight blocks arrive as sparse 0/1 row lists but are densified here:
//! at desk scale every block fits comfortably in memory, and contiguous
//! row operations vectorize. The `p = 2` path packs rows into machine
//! words; odd primes below 16 get monomorphized byte kernels so the
//! modular reduction compiles to multiply-shift code.

/// Row-major dense matrix over `F_p` with byte entries (`p < 256`).
pub struct DenseMat {
    pub p: u64,
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<u8>,
}

impl DenseMat {
    pub fn zeros(p: u64, nrows: usize, ncols: usize) -> Self {
        assert!((2..256).contains(&p), "p must be a prime below 256");
        DenseMat { p, nrows, ncols, data: vec![0; nrows * ncols] }
    }

    /// Build from sparse rows of column indices; repeated indices
    /// accumulate additively mod `p`.
    pub fn from_sparse_01(p: u64, ncols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = DenseMat::zeros(p, rows.len(), ncols);
        for (i, cols) in rows.iter().enumerate() {
            for &c in cols {
                let x = &mut m.data[i * ncols + c as usize];
                *x = (*x + 1) % p as u8;
            }
        }
        m
    }

    pub fn from_rows(p: u64, ncols: usize, rows: Vec<Vec<u8>>) -> Self {
        let mut m = DenseMat::zeros(p, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols);
            m.data[i * ncols..(i + 1) * ncols].copy_from_slice(r);
        }
        m
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let (a, b) = self.data.split_at_mut(hi * self.ncols);
        a[lo * self.ncols..(lo + 1) * self.ncols].swap_with_slice(&mut b[..self.ncols]);
    }

    /// Destructive row echelon; returns the rank. Reduces below pivots only.
    pub fn echelonize(&mut self) -> usize {
        if self.p == 2 {
            return self.echelonize_gf2();
        }
        match self.p {
            3 => self.echelonize_mod::<3>(),
            5 => self.echelonize_mod::<5>(),
            7 => self.echelonize_mod::<7>(),
            11 => self.echelonize_mod::<11>(),
            13 => self.echelonize_mod::<13>(),
            _ => self.echelonize_generic(),
        }
    }

    fn echelonize_mod<const P: u16>(&mut self) -> usize {
        let ncols = self.ncols;
        let mut rank = 0;
        for col in 0..ncols {
            if rank == self.nrows {
                break;
            }
            let Some(piv) = (rank..self.nrows).find(|&r| self.data[r * ncols + col] != 0)
            else {
                continue;
            };
            self.swap_rows(rank, piv);
            let inv = mod_inverse(self.data[rank * ncols + col] as u64, P as u64) as u16;
            if inv != 1 {
                for x in &mut self.row_mut(rank)[col..] {
                    *x = ((*x as u16 * inv) % P) as u8;
                }
            }
            let (done, rest) = self.data.split_at_mut((rank + 1) * ncols);
            let prow = &done[rank * ncols..];
            for r in rest.chunks_exact_mut(ncols) {
                let m = r[col];
                if m != 0 {
                    // r -= m * pivot, i.e. r += (P - m) * pivot.
                    let mm = (P - m as u16) as u8;
                    axpy_mod::<P>(&mut r[col..], &prow[col..], mm);
                }
            }
            rank += 1;
        }
        rank
    }

    fn echelonize_generic(&mut self) -> usize {
        let p = self.p as u32;
        let ncols = self.ncols;
        let mut rank = 0;
        for col in 0..ncols {
            if rank == self.nrows {
                break;
            }
            let Some(piv) = (rank..self.nrows).find(|&r| self.data[r * ncols + col] != 0)
            else {
                continue;
            };
            self.swap_rows(rank, piv);
            let inv = mod_inverse(self.data[rank * ncols + col] as u64, self.p) as u32;
            if inv != 1 {
                for x in &mut self.row_mut(rank)[col..] {
                    *x = ((*x as u32 * inv) % p) as u8;
                }
            }
            let (done, rest) = self.data.split_at_mut((rank + 1) * ncols);
            let prow = &done[rank * ncols..];
            for r in rest.chunks_exact_mut(ncols) {
                let m = r[col] as u32;
                if m != 0 {
                    let mm = p - m;
                    for (d, &s) in r[col..].iter_mut().zip(&prow[col..]) {
                        *d = ((*d as u32 + mm * s as u32) % p) as u8;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn echelonize_gf2(&mut self) -> usize {
        let words = self.ncols.div_ceil(64);
        let mut bits: Vec<u64> = vec![0; self.nrows * words];
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                if self.data[i * self.ncols + j] != 0 {
                    bits[i * words + j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        let rank = gf2_rank(&mut bits, self.nrows, self.ncols, words);
        // Write the echelon form back so kernel extraction can read it.
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                self.data[i * self.ncols + j] =
                    ((bits[i * words + j / 64] >> (j % 64)) & 1) as u8;
            }
        }
        rank
    }

    /// Rank without preserving the matrix contents.
    pub fn rank(mut self) -> usize {
        if self.p == 2 {
            let words = self.ncols.div_ceil(64);
            let mut bits: Vec<u64> = vec![0; self.nrows * words];
            for i in 0..self.nrows {
                for j in 0..self.ncols {
                    if self.data[i * self.ncols + j] != 0 {
                        bits[i * words + j / 64] |= 1u64 << (j % 64);
                    }
                }
            }
            return gf2_rank(&mut bits, self.nrows, self.ncols, words);
        }
        self.echelonize()
    }
}

/// Rank of a sparse 0/1 matrix given as rows of column indices.
pub fn rank_sparse_01(p: u64, ncols: usize, rows: &[Vec<u32>]) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    if p == 2 {
        let words = ncols.div_ceil(64);
        let mut bits: Vec<u64> = vec![0; rows.len() * words];
        for (i, cols) in rows.iter().enumerate() {
            for &c in cols {
                bits[i * words + c as usize / 64] ^= 1u64 << (c % 64);
            }
        }
        return gf2_rank(&mut bits, rows.len(), ncols, words);
    }
    DenseMat::from_sparse_01(p, ncols, rows).rank()
}

fn gf2_rank(bits: &mut [u64], nrows: usize, ncols: usize, words: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let w = col / 64;
        let mask = 1u64 << (col % 64);
        let Some(piv) = (rank..nrows).find(|&r| bits[r * words + w] & mask != 0) else {
            continue;
        };
        if piv != rank {
            for k in 0..words {
                bits.swap(rank * words + k, piv * words + k);
            }
        }
        let (done, rest) = bits.split_at_mut((rank + 1) * words);
        let prow = &done[rank * words..];
        for r in rest.chunks_exact_mut(words) {
            if r[w] & mask != 0 {
                for (d, &s) in r[w..].iter_mut().zip(&prow[w..]) {
                    *d ^= s;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[inline]
fn axpy_mod<const P: u16>(dst: &mut [u8], src: &[u8], m: u8) {
    // Entries stay below P, so the accumulator fits a u16 for P < 256
    // and a u8 again after reduction.
    let m = m as u16;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u16 + m * s as u16) % P) as u8;
    }
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    debug_assert!(a % p != 0);
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Basis of the left kernel `{x : x A = 0}` of the sparse 0/1 matrix
/// with the given rows, as dense coefficient vectors of length
/// `rows.len()`. The basis is in echelon order with respect to the
/// original row indices.
pub fn left_kernel_sparse_01(p: u64, ncols: usize, rows: &[Vec<u32>]) -> Vec<Vec<u8>> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    // Augment [A | I] and echelonize; zero left parts yield kernel vectors.
    let width = ncols + nrows;
    let mut m = DenseMat::zeros(p, nrows, width);
    for (i, cols) in rows.iter().enumerate() {
        for &c in cols {
            m.data[i * width + c as usize] = (m.data[i * width + c as usize] + 1) % p as u8;
        }
        m.data[i * width + ncols + i] = 1;
    }
    // Eliminate using only the first `ncols` columns as pivot candidates.
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m.data[r * width + col] != 0) else {
            continue;
        };
        m.swap_rows(rank, piv);
        let inv = mod_inverse(m.data[rank * width + col] as u64, p);
        if inv != 1 {
            for x in &mut m.row_mut(rank)[col..] {
                *x = ((*x as u64 * inv) % p) as u8;
            }
        }
        let (done, rest) = m.data.split_at_mut((rank + 1) * width);
        let prow = &done[rank * width..];
        for r in rest.chunks_exact_mut(width) {
            let mu = r[col] as u64;
            if mu != 0 {
                let mm = (p - mu) as u32;
                let pp = p as u32;
                for (d, &s) in r[col..].iter_mut().zip(&prow[col..]) {
                    *d = ((*d as u32 + mm * s as u32) % pp) as u8;
                }
            }
        }
        rank += 1;
    }
    (rank..nrows)
        .map(|i| m.row(i)[ncols..].to_vec())
        .collect()
}
