//! Canonical representatives of 0/1-simplices up to cube symmetry.
//!
//! Two representations describe the same simplex exactly when one can be
//! turned into the other by row permutations, column permutations and
//! reflections that move a vertex to the origin. The canonical form is the
//! least matrix in that orbit under row-major lexicographic order (each row
//! read as a bit string starting at column 0).
//!
//! The search fixes rows one at a time. Columns are kept in an ordered
//! partition; a row can do no better inside a cell than zeros followed by
//! ones, so each candidate row is scored by its tuple of per-cell counts and
//! only the best-scoring rows are branched on. Picking a row splits every cell
//! into its zeros and ones. Once every cell is a single column the remaining
//! rows are simply sorted.

use crate::bitcore::{BinMatrix, Permutation};
use crate::error::{Error, Result};
use crate::exact::determinant_bin;

/// Which vertex was moved to the origin before permuting.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OriginChoice {
    Keep,
    /// `xor_reflect` at this column of the input.
    Column(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub matrix: BinMatrix,
    pub origin: OriginChoice,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
}

impl CanonicalForm {
    /// Replays the recorded moves on `p`.
    pub fn reproduce(&self, p: &BinMatrix) -> Result<BinMatrix> {
        let base = match self.origin {
            OriginChoice::Keep => p.clone(),
            OriginChoice::Column(c) => p.xor_reflect(c)?,
        };
        base.permute(&self.row_perm, &self.col_perm)
    }
}

/// Canonical form of a nonsingular square representation.
pub fn canonical_form(p: &BinMatrix) -> Result<CanonicalForm> {
    p.require_square()?;
    if num_traits::Zero::is_zero(&determinant_bin(p)?) {
        return Err(Error::SingularMatrix);
    }
    Ok(canonical_vertex_set(p))
}

/// Canonical form of the vertex set `{0} ∪ columns(p)` for any `n x k`
/// matrix, minimized over all `k + 1` origin choices.
pub fn canonical_vertex_set(p: &BinMatrix) -> CanonicalForm {
    let mut search = Search::new(p.nrows(), p.ncols());
    let mut best_origin = OriginChoice::Keep;
    let choices =
        std::iter::once(OriginChoice::Keep).chain((0..p.ncols()).map(OriginChoice::Column));
    for choice in choices {
        let m = match choice {
            OriginChoice::Keep => p.clone(),
            OriginChoice::Column(c) => p.xor_reflect(c).expect("column in range"),
        };
        if search.run(&m) {
            best_origin = choice;
        }
    }
    let row_perm = Permutation::new(search.best_rows.clone()).expect("row order is a permutation");
    let col_perm =
        Permutation::new(search.best_cols.clone()).expect("column order is a permutation");
    let base = match best_origin {
        OriginChoice::Keep => p.clone(),
        OriginChoice::Column(c) => p.xor_reflect(c).expect("column in range"),
    };
    let matrix = base.permute(&row_perm, &col_perm).expect("sizes match");
    debug_assert_eq!(
        (0..matrix.nrows())
            .map(|i| matrix.row_key(i))
            .collect::<Vec<_>>(),
        search.best
    );
    CanonicalForm {
        matrix,
        origin: best_origin,
        row_perm,
        col_perm,
    }
}

/// Least matrix reachable by row and column permutations alone.
pub fn canonical_permutation_form(p: &BinMatrix) -> (BinMatrix, Permutation, Permutation) {
    let mut search = Search::new(p.nrows(), p.ncols());
    search.run(p);
    let rp = Permutation::new(search.best_rows).expect("row order");
    let cp = Permutation::new(search.best_cols).expect("column order");
    (p.permute(&rp, &cp).expect("sizes match"), rp, cp)
}

/// Same simplex up to symmetry.
pub fn equivalent(p: &BinMatrix, r: &BinMatrix) -> Result<bool> {
    if (p.nrows(), p.ncols()) != (r.nrows(), r.ncols()) {
        return Err(Error::DimensionMismatch {
            expected: p.nrows(),
            found: r.nrows(),
        });
    }
    Ok(canonical_form(p)?.matrix == canonical_form(r)?.matrix)
}

/// Branch-and-bound state shared across origin choices so that a good
/// bound found for one origin prunes the others.
struct Search {
    ncols: usize,
    best: Vec<u64>,
    best_rows: Vec<usize>,
    best_cols: Vec<usize>,
    have_best: bool,
    // Scratch for the current branch.
    rows: Vec<u64>,
    prefix: Vec<u64>,
    order: Vec<usize>,
    improved: bool,
}

impl Search {
    fn new(nrows: usize, ncols: usize) -> Self {
        Search {
            ncols,
            best: Vec::with_capacity(nrows),
            best_rows: Vec::new(),
            best_cols: Vec::new(),
            have_best: false,
            rows: Vec::new(),
            prefix: Vec::with_capacity(nrows),
            order: Vec::with_capacity(nrows),
            improved: false,
        }
    }

    /// Searches the permutation orbit of `m`; returns true if it produced a
    /// new best.
    fn run(&mut self, m: &BinMatrix) -> bool {
        self.rows = m.row_bits().to_vec();
        self.prefix.clear();
        self.order.clear();
        self.improved = false;
        let all = crate::bitcore::mask(self.ncols);
        let cells = if self.ncols == 0 {
            Vec::new()
        } else {
            vec![all]
        };
        let remaining: Vec<usize> = (0..self.rows.len()).collect();
        self.descend(&cells, &remaining);
        self.improved
    }

    /// Compares the current prefix with the best matrix of the same length.
    fn against_best(&self) -> std::cmp::Ordering {
        if !self.have_best {
            return std::cmp::Ordering::Less;
        }
        self.prefix[..].cmp(&self.best[..self.prefix.len()])
    }

    fn record_best(&mut self, cells: &[u64]) {
        self.best.clone_from(&self.prefix);
        self.best_rows.clone_from(&self.order);
        self.best_cols = cells.iter().flat_map(|&c| bit_indices(c)).collect();
        self.have_best = true;
        self.improved = true;
    }

    /// Extends the current prefix (which is never above the best) by every
    /// remaining row in turn.
    fn descend(&mut self, cells: &[u64], remaining: &[usize]) {
        if remaining.is_empty() {
            if self.against_best().is_lt() {
                self.record_best(cells);
            }
            return;
        }
        if cells.iter().all(|c| c.count_ones() == 1) {
            self.finish_discrete(cells, remaining);
            return;
        }
        let scored: Vec<(u64, usize)> = remaining
            .iter()
            .map(|&r| (self.word(cells, self.rows[r]), r))
            .collect();
        let min = scored.iter().map(|s| s.0).min().expect("rows remain");
        let mut tried: Vec<u64> = Vec::new();
        for &(w, r) in &scored {
            let bits = self.rows[r];
            if w != min || tried.contains(&bits) {
                continue;
            }
            tried.push(bits);
            self.prefix.push(w);
            self.order.push(r);
            // The bound may have dropped while exploring a sibling.
            if !self.against_best().is_gt() {
                let refined: Vec<u64> = cells
                    .iter()
                    .flat_map(|&c| [c & !bits, c & bits])
                    .filter(|&c| c != 0)
                    .collect();
                let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != r).collect();
                self.descend(&refined, &rest);
            }
            self.prefix.pop();
            self.order.pop();
        }
    }

    /// With the column order fixed, the best completion lists the remaining
    /// rows in increasing order.
    fn finish_discrete(&mut self, cells: &[u64], remaining: &[usize]) {
        let mut words: Vec<(u64, usize)> = remaining
            .iter()
            .map(|&r| (self.word(cells, self.rows[r]), r))
            .collect();
        words.sort_unstable();
        let n0 = self.prefix.len();
        for &(w, r) in &words {
            self.prefix.push(w);
            self.order.push(r);
        }
        if self.against_best().is_lt() {
            self.record_best(cells);
        }
        self.prefix.truncate(n0);
        self.order.truncate(n0);
    }

    /// Row word when each cell is laid out zeros first, most significant bit
    /// at the first column.
    fn word(&self, cells: &[u64], bits: u64) -> u64 {
        let mut w = 0u64;
        for &c in cells {
            let size = c.count_ones();
            let ones = (bits & c).count_ones();
            w = if size >= 64 { 0 } else { w << size } | crate::bitcore::mask(ones as usize);
        }
        w
    }
}

fn bit_indices(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}
