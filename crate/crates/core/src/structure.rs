//! Decomposability of square 0/1 matrices and the block structure of
//! nonobtuse simplices.
//!
//! A square matrix is partly decomposable when it has an `r x s` zero
//! submatrix with `r + s = n`; otherwise it is fully indecomposable. The test
//! runs on the bipartite row/column graph: without a perfect matching König's
//! theorem hands us a large zero block, and with one the matrix is fully
//! indecomposable exactly when the matching digraph is strongly connected.
//!
//! A nonobtuse representation can be permuted to block upper triangular form
//! with fully indecomposable diagonal blocks, where the strip above each block
//! repeats one column `ν` that is zero or a column to the left.

use crate::bitcore::{BinMatrix, BinVector, Permutation};
use crate::error::{Error, Result};
use crate::geometry::classify;

/// Rows `v` and columns `w` of a zero submatrix with `ones(v) + ones(w) = n`,
/// or `None` when `a` is fully indecomposable. A `1 x 1` matrix never has
/// such a pair.
pub fn find_partition_witness(a: &BinMatrix) -> Result<Option<(BinVector, BinVector)>> {
    let n = a.require_square()?;
    if n <= 1 {
        return Ok(None);
    }
    let m = maximum_matching(a);
    if m.size < n {
        let (rows, cols) = konig_zero_block(a, &m);
        return Ok(Some(shrink_zero_block(n, rows, cols)));
    }
    let comps = matched_components(a, &m.col_of_row);
    if comps.count == 1 {
        return Ok(None);
    }
    // A sink component has no edges leaving it: its rows are zero on every
    // column matched outside it.
    let sink = sink_component(a, &m.col_of_row, &comps);
    let mut rows = 0u64;
    let mut cols = 0u64;
    for i in 0..n {
        if comps.id[i] == sink {
            rows |= 1 << i;
        } else {
            cols |= 1 << m.col_of_row[i];
        }
    }
    Ok(Some((
        BinVector::from_bits_unchecked(rows, n),
        BinVector::from_bits_unchecked(cols, n),
    )))
}

pub fn is_fully_indecomposable(a: &BinMatrix) -> Result<bool> {
    Ok(find_partition_witness(a)?.is_none())
}

struct Matching {
    size: usize,
    /// Matched column of each row, `usize::MAX` when unmatched.
    col_of_row: Vec<usize>,
    row_of_col: Vec<usize>,
}

const UNMATCHED: usize = usize::MAX;

fn maximum_matching(a: &BinMatrix) -> Matching {
    let n = a.nrows();
    let mut m = Matching {
        size: 0,
        col_of_row: vec![UNMATCHED; n],
        row_of_col: vec![UNMATCHED; a.ncols()],
    };
    for r in 0..n {
        let mut seen = 0u64;
        if augment(a, r, &mut seen, &mut m) {
            m.size += 1;
        }
    }
    m
}

fn augment(a: &BinMatrix, r: usize, seen: &mut u64, m: &mut Matching) -> bool {
    let mut cand = a.row_bits()[r] & !*seen;
    while cand != 0 {
        let c = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if *seen >> c & 1 == 1 {
            continue;
        }
        *seen |= 1 << c;
        let owner = m.row_of_col[c];
        if owner == UNMATCHED || augment(a, owner, seen, m) {
            m.col_of_row[r] = c;
            m.row_of_col[c] = r;
            return true;
        }
    }
    false
}

/// Zero block from a minimum vertex cover: rows and columns outside the
/// cover. Returns `(rows, cols)` bitmasks with `|rows| + |cols| > n`.
fn konig_zero_block(a: &BinMatrix, m: &Matching) -> (u64, u64) {
    let n = a.nrows();
    // Alternating reachability from unmatched rows.
    let mut row_seen = 0u64;
    let mut col_seen = 0u64;
    let mut stack: Vec<usize> = (0..n).filter(|&r| m.col_of_row[r] == UNMATCHED).collect();
    for &r in &stack {
        row_seen |= 1 << r;
    }
    while let Some(r) = stack.pop() {
        let mut cols = a.row_bits()[r] & !col_seen;
        while cols != 0 {
            let c = cols.trailing_zeros() as usize;
            cols &= cols - 1;
            col_seen |= 1 << c;
            let next = m.row_of_col[c];
            if next != UNMATCHED && row_seen >> next & 1 == 0 {
                row_seen |= 1 << next;
                stack.push(next);
            }
        }
    }
    // Cover = unreached rows + reached columns; its complement is zero.
    let full = crate::bitcore::mask(n);
    (row_seen & full, !col_seen & full)
}

fn shrink_zero_block(n: usize, rows: u64, cols: u64) -> (BinVector, BinVector) {
    let r0 = rows.count_ones() as usize;
    let keep_rows = r0.min(n - 1);
    let keep_cols = n - keep_rows;
    (
        BinVector::from_bits_unchecked(lowest_bits(rows, keep_rows), n),
        BinVector::from_bits_unchecked(lowest_bits(cols, keep_cols), n),
    )
}

fn lowest_bits(mut x: u64, k: usize) -> u64 {
    let mut out = 0;
    for _ in 0..k {
        let b = x & x.wrapping_neg();
        out |= b;
        x ^= b;
    }
    out
}

/// Strongly connected components of the digraph on rows with an edge
/// `i -> k` whenever row `i` has a one in the column matched to row `k`.
struct Components {
    count: usize,
    id: Vec<usize>,
}

fn successors(a: &BinMatrix, row_of_col: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut bits = a.row_bits()[i];
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let k = row_of_col[c];
        if k != i {
            out.push(k);
        }
    }
    out
}

fn invert(col_of_row: &[usize]) -> Vec<usize> {
    let mut row_of_col = vec![0; col_of_row.len()];
    for (r, &c) in col_of_row.iter().enumerate() {
        row_of_col[c] = r;
    }
    row_of_col
}

fn matched_components(a: &BinMatrix, col_of_row: &[usize]) -> Components {
    let n = a.nrows();
    let row_of_col = invert(col_of_row);
    let adj: Vec<Vec<usize>> = (0..n).map(|i| successors(a, &row_of_col, i)).collect();
    tarjan(&adj)
}

fn tarjan(adj: &[Vec<usize>]) -> Components {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<usize>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        id: Vec<usize>,
        count: usize,
    }
    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = s.next;
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for k in 0..s.adj[v].len() {
            let w = s.adj[v][k];
            if s.index[w] == UNMATCHED {
                visit(s, w);
                s.low[v] = s.low[v].min(s.low[w]);
            } else if s.on_stack[w] {
                s.low[v] = s.low[v].min(s.index[w]);
            }
        }
        if s.low[v] == s.index[v] {
            loop {
                let w = s.stack.pop().expect("tarjan stack");
                s.on_stack[w] = false;
                s.id[w] = s.count;
                if w == v {
                    break;
                }
            }
            s.count += 1;
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![UNMATCHED; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        id: vec![0; n],
        count: 0,
    };
    for v in 0..n {
        if s.index[v] == UNMATCHED {
            visit(&mut s, v);
        }
    }
    Components {
        count: s.count,
        id: s.id,
    }
}

fn sink_component(a: &BinMatrix, col_of_row: &[usize], comps: &Components) -> usize {
    let row_of_col = invert(col_of_row);
    let mut has_out = vec![false; comps.count];
    for i in 0..a.nrows() {
        for k in successors(a, &row_of_col, i) {
            if comps.id[k] != comps.id[i] {
                has_out[comps.id[i]] = true;
            }
        }
    }
    has_out
        .iter()
        .position(|&x| !x)
        .expect("condensation is acyclic")
}

/// The column repeated across the strip above a diagonal block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Strip {
    /// Common column of the strip, restricted to the rows above the block.
    pub nu: BinVector,
    /// Column of the triangular form equal to `(ν, 0)`, or `None` when `ν = 0`.
    pub source_column: Option<usize>,
}

/// Block upper triangular form `form = permute(P, row_perm, col_perm)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDecomposition {
    pub row_perm: Permutation,
    pub col_perm: Permutation,
    pub form: BinMatrix,
    /// Diagonal blocks from top left to bottom right.
    pub blocks: Vec<BinMatrix>,
    /// Index of the first row and column of each block.
    pub offsets: Vec<usize>,
    pub strips: Vec<Strip>,
}

impl BlockDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    /// Vertex id (in the input matrix) that block `j` attaches to: the
    /// origin or the vertex of the strip's source column.
    pub fn attachment_vertex(&self, j: usize) -> usize {
        match self.strips[j].source_column {
            None => 0,
            Some(c) => self.col_perm.apply(c) + 1,
        }
    }

    /// Vertex ids (in the input matrix) of the columns of block `j`.
    pub fn block_vertices(&self, j: usize) -> Vec<usize> {
        let start = self.offsets[j];
        (start..start + self.blocks[j].ncols())
            .map(|c| self.col_perm.apply(c) + 1)
            .collect()
    }

    /// Pairs of blocks that share a vertex, with that vertex id.
    pub fn attachment_edges(&self) -> Vec<(usize, usize, usize)> {
        let sets: Vec<Vec<usize>> = (0..self.blocks.len())
            .map(|j| {
                let mut s = vec![self.attachment_vertex(j)];
                s.extend(self.block_vertices(j));
                s
            })
            .collect();
        let mut out = Vec::new();
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                for &v in &sets[a] {
                    if sets[b].contains(&v) {
                        out.push((a, b, v));
                    }
                }
            }
        }
        out
    }
}

/// Permutes a nonobtuse representation to block upper triangular form.
///
/// Among valid orders, the next block is always the available one holding
/// the smallest original column; rows and columns keep their relative order
/// inside a block.
pub fn block_triangular_form(p: &BinMatrix) -> Result<BlockDecomposition> {
    p.require_square()?;
    if !classify(p).is_nonobtuse() {
        return Err(Error::NotNonobtuse);
    }
    triangular_form_unchecked(p)
}

pub(crate) fn triangular_form_unchecked(p: &BinMatrix) -> Result<BlockDecomposition> {
    let n = p.require_square()?;
    let m = maximum_matching(p);
    if m.size < n {
        return Err(Error::SingularMatrix);
    }
    let comps = matched_components(p, &m.col_of_row);
    let row_of_col = invert(&m.col_of_row);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps.count];
    for i in 0..n {
        members[comps.id[i]].push(i);
    }
    // Block of row i must precede the block of every column in row i.
    let mut indegree = vec![0usize; comps.count];
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); comps.count];
    for i in 0..n {
        for k in successors(p, &row_of_col, i) {
            let (a, b) = (comps.id[i], comps.id[k]);
            if a != b && !out_edges[a].contains(&b) {
                out_edges[a].push(b);
                indegree[b] += 1;
            }
        }
    }
    let min_col = |b: usize| {
        members[b]
            .iter()
            .map(|&i| m.col_of_row[i])
            .min()
            .unwrap_or(usize::MAX)
    };
    let mut order = Vec::with_capacity(comps.count);
    let mut ready: Vec<usize> = (0..comps.count).filter(|&b| indegree[b] == 0).collect();
    while !ready.is_empty() {
        let pos = (0..ready.len())
            .min_by_key(|&k| min_col(ready[k]))
            .expect("nonempty");
        let b = ready.swap_remove(pos);
        order.push(b);
        for &c in &out_edges[b] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.push(c);
            }
        }
    }

    let mut rows = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(order.len());
    for &b in &order {
        offsets.push(rows.len());
        let mut rs = members[b].clone();
        let mut cs: Vec<usize> = rs.iter().map(|&i| m.col_of_row[i]).collect();
        rs.sort_unstable();
        cs.sort_unstable();
        rows.extend(rs);
        cols.extend(cs);
    }
    let row_perm = Permutation::new(rows)?;
    let col_perm = Permutation::new(cols)?;
    let form = p.permute(&row_perm, &col_perm)?;
    let mut blocks = Vec::with_capacity(order.len());
    let mut strips = Vec::with_capacity(order.len());
    for (j, &start) in offsets.iter().enumerate() {
        let end = offsets.get(j + 1).copied().unwrap_or(n);
        let idx: Vec<usize> = (start..end).collect();
        blocks.push(form.submatrix(&idx, &idx));
        strips.push(read_strip(&form, start, end)?);
    }
    Ok(BlockDecomposition {
        row_perm,
        col_perm,
        form,
        blocks,
        offsets,
        strips,
    })
}

/// Checks that every column of the strip above rows `start..end` agrees and
/// that the common column is zero or a column to its left.
fn read_strip(form: &BinMatrix, start: usize, end: usize) -> Result<Strip> {
    let above: Vec<usize> = (0..start).collect();
    let strip = form.submatrix(&above, &(start..end).collect::<Vec<_>>());
    let nu = strip.column(0);
    if strip.columns().iter().any(|c| *c != nu) {
        return Err(Error::Inconsistent(format!(
            "strip above rows {start}..{end} is not a repeated column"
        )));
    }
    if nu.is_zero() {
        return Ok(Strip {
            nu,
            source_column: None,
        });
    }
    let left = form.submatrix(&above, &above);
    match (0..start).find(|&c| left.column(c) == nu) {
        Some(c) => Ok(Strip {
            nu,
            source_column: Some(c),
        }),
        None => Err(Error::Inconsistent(format!(
            "strip above rows {start}..{end} is not a column of the leading block"
        ))),
    }
}

/// One step in a sequence of equivalence moves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Operation {
    Permute {
        rows: Permutation,
        cols: Permutation,
    },
    Reflect {
        column: usize,
    },
}

impl Operation {
    pub fn apply(&self, p: &BinMatrix) -> Result<BinMatrix> {
        match self {
            Operation::Permute { rows, cols } => p.permute(rows, cols),
            Operation::Reflect { column } => p.xor_reflect(*column),
        }
    }
}

/// Applies the moves in order.
pub fn apply_operations(p: &BinMatrix, ops: &[Operation]) -> Result<BinMatrix> {
    ops.iter().try_fold(p.clone(), |m, op| op.apply(&m))
}

/// Brings a partly decomposable nonobtuse representation to the form
/// `[[N, 0], [0, A]]` with `A` fully indecomposable: permute to triangular
/// form, then reflect at the strip column above the last block if it is
/// nonzero. Returns the final matrix and the moves used, which are empty
/// when the input already has that shape.
pub fn block_diagonalize(p: &BinMatrix) -> Result<(BinMatrix, Vec<Operation>)> {
    let bd = block_triangular_form(p)?;
    if bd.blocks.len() == 1 {
        return Err(Error::FullyIndecomposable);
    }
    let mut ops = Vec::new();
    if !(bd.row_perm.is_identity() && bd.col_perm.is_identity()) {
        ops.push(Operation::Permute {
            rows: bd.row_perm.clone(),
            cols: bd.col_perm.clone(),
        });
    }
    let last = bd.strips.last().expect("at least two blocks");
    let mut out = bd.form.clone();
    if let Some(c) = last.source_column {
        ops.push(Operation::Reflect { column: c });
        out = out.xor_reflect(c)?;
    }
    Ok((out, ops))
}

/// One fully indecomposable piece of a nonobtuse simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub dimension: usize,
    /// Vertex where the piece attaches to the earlier ones (`0` = origin).
    pub attachment: usize,
    /// All vertex ids of the piece, attachment first.
    pub vertices: Vec<usize>,
}

/// The complex of fully indecomposable pieces of a nonobtuse simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexStructure {
    pub n: usize,
    pub components: Vec<Component>,
    /// `(a, b, v)`: pieces `a` and `b` share vertex `v`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl ComplexStructure {
    pub fn dimensions(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dimension).collect()
    }

    /// Number of pieces containing vertex `v`.
    pub fn vertex_multiplicity(&self, v: usize) -> usize {
        self.components
            .iter()
            .filter(|c| c.vertices.contains(&v))
            .count()
    }
}

pub fn indecomposable_components(p: &BinMatrix) -> Result<ComplexStructure> {
    let bd = block_triangular_form(p)?;
    let components = (0..bd.blocks.len())
        .map(|j| {
            let attachment = bd.attachment_vertex(j);
            let mut vertices = vec![attachment];
            vertices.extend(bd.block_vertices(j));
            Component {
                dimension: bd.blocks[j].nrows(),
                attachment,
                vertices,
            }
        })
        .collect();
    Ok(ComplexStructure {
        n: p.nrows(),
        components,
        edges: bd.attachment_edges(),
    })
}

/// Column `j` replaced by its antipode.
pub fn antipodal_replace(p: &BinMatrix, j: usize) -> Result<BinMatrix> {
    if j >= p.ncols() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: p.ncols(),
        });
    }
    p.replace_column(j, &p.column(j).antipode())
}

/// Number of connected pieces of the bipartite row/column graph, i.e. the
/// number of diagonal blocks of the finest block diagonal permutation.
pub fn diagonal_block_count(p: &BinMatrix) -> usize {
    let n = p.nrows();
    let k = p.ncols();
    let mut parent: Vec<usize> = (0..n + k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for (i, j) in p.support() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, n + j));
        parent[a] = b;
    }
    (0..n + k)
        .map(|x| find(&mut parent, x))
        .collect::<std::collections::BTreeSet<_>>()
        .len()
}
