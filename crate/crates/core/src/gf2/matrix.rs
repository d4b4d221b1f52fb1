use std::fmt::Write as _;

/// Dense matrix over the two-element field, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf2Matrix {}x{}\n{}", self.rows, self.cols, self.to_pbm())
    }
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Gf2Matrix {
        let stride = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        let bit = 1u64 << (c % 64);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / 64] ^= 1u64 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Number of ones in column `c`.
    pub fn column_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// `row[dst] ^= row[src]`, touching only words from `from_word` on.
    fn xor_row(&mut self, dst: usize, src: usize, from_word: usize) {
        let s = self.stride;
        let (d, sr) = if dst > src {
            let (head, tail) = self.data.split_at_mut(dst * s);
            (&mut tail[..s], &head[src * s..(src + 1) * s])
        } else {
            let (head, tail) = self.data.split_at_mut(src * s);
            (&mut head[dst * s..(dst + 1) * s], &tail[..s])
        };
        for (x, y) in d[from_word..].iter_mut().zip(&sr[from_word..]) {
            *x ^= *y;
        }
    }

    /// Forward elimination restricted to the first `pivot_cols` columns.
    /// Leaves the matrix in row-echelon form on those columns and returns
    /// the number of pivots found.
    fn eliminate(&mut self, pivot_cols: usize) -> usize {
        let mut rank = 0;
        for c in 0..pivot_cols {
            if rank == self.rows {
                break;
            }
            let w = c / 64;
            let bit = 1u64 << (c % 64);
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * self.stride + w] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(p, rank);
            for r in rank + 1..self.rows {
                if self.data[r * self.stride + w] & bit != 0 {
                    self.xor_row(r, rank, w);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank, computed on a copy.
    pub fn rank(&self) -> usize {
        self.clone().rank_in_place()
    }

    /// Rank by elimination; the matrix is left in row-echelon form.
    pub fn rank_in_place(&mut self) -> usize {
        self.eliminate(self.cols)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.iter_row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn iter_row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let ones: Vec<usize> = self.iter_row_ones(r).collect();
            let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
            for k in ones {
                for (x, y) in dst.iter_mut().zip(other.row_words(k)) {
                    *x ^= *y;
                }
            }
        }
        out
    }

    /// Basis of the left null space `{x : x * self = 0}`, one vector per row.
    pub fn left_kernel(&self) -> Gf2Matrix {
        let n = self.rows;
        let mut aug = Gf2Matrix::zeros(n, self.cols + n);
        for r in 0..n {
            for c in self.iter_row_ones(r) {
                aug.set(r, c, true);
            }
            aug.set(r, self.cols + r, true);
        }
        let rank = aug.eliminate(self.cols);
        let mut basis = Gf2Matrix::zeros(n - rank, n);
        for (i, r) in (rank..n).enumerate() {
            for c in aug.iter_row_ones(r) {
                debug_assert!(c >= self.cols);
                basis.set(i, c - self.cols, true);
            }
        }
        basis
    }

    /// ASCII bitmap: a `rows cols` header line, then one line of 0/1 per row.
    pub fn to_pbm(&self) -> String {
        let mut s = String::with_capacity((self.cols + 1) * self.rows + 16);
        let _ = writeln!(s, "{} {}", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}
