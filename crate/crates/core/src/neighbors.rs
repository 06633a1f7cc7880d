//! Facet neighbors: which cube vertices complete a facet of a simplex to a
//! nonobtuse or acute simplex, and which cube vertices have their altitude
//! land on the facet.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::bitcore::{BinMatrix, BinVector};
use crate::error::{Error, Result};
use crate::exact::{determinant_bin, ExactVector};
use crate::geometry::{classify, facet_vertices, normals, Classification, FacetProjector, Verdict};
use crate::structure::block_triangular_form;

/// A facet, named by the vertex opposite to it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FacetId {
    Origin,
    /// Facet opposite column `j`.
    Column(usize),
}

impl FacetId {
    /// Vertex id of the opposite vertex (`0` = origin, `j + 1` = column `j`).
    pub fn vertex_id(self) -> usize {
        match self {
            FacetId::Origin => 0,
            FacetId::Column(j) => j + 1,
        }
    }

    pub fn from_vertex_id(id: usize) -> Self {
        if id == 0 {
            FacetId::Origin
        } else {
            FacetId::Column(id - 1)
        }
    }

    /// All `n + 1` facets, origin first.
    pub fn all(n: usize) -> impl Iterator<Item = FacetId> {
        (0..=n).map(FacetId::from_vertex_id)
    }
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetId::Origin => f.write_str("origin"),
            FacetId::Column(j) => write!(f, "{j}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Target {
    Nonobtuse,
    Acute,
}

impl Target {
    pub fn accepts(self, verdict: Verdict) -> bool {
        match self {
            Target::Nonobtuse => verdict.is_nonobtuse(),
            Target::Acute => verdict == Verdict::Acute,
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonobtuse" => Ok(Target::Nonobtuse),
            "acute" => Ok(Target::Acute),
            other => Err(Error::UnknownFilter(other.to_string())),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Nonobtuse => "nonobtuse",
            Target::Acute => "acute",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Candidate {
    pub vertex: BinVector,
    pub classification: Classification,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeighborReport {
    pub facet: FacetId,
    pub target: Target,
    /// The vertex currently opposite the facet.
    pub opposite: BinVector,
    /// The facet does not lie in a facet of the cube.
    pub interior: bool,
    /// Every tested vertex with the verdict of the completed simplex.
    pub candidates: Vec<Candidate>,
    /// Vertices whose orthogonal projection lands on the closed facet.
    pub altitude_feet: Vec<BinVector>,
    /// The search stopped early after two target completions.
    pub truncated: bool,
}

impl NeighborReport {
    /// Vertices whose completion meets the target, including the opposite
    /// vertex when it qualifies.
    pub fn completions(&self) -> Vec<BinVector> {
        self.candidates
            .iter()
            .filter(|c| self.target.accepts(c.classification.verdict))
            .map(|c| c.vertex)
            .collect()
    }

    /// Target completions other than the existing opposite vertex.
    pub fn other_completions(&self) -> Vec<BinVector> {
        self.completions()
            .into_iter()
            .filter(|v| *v != self.opposite)
            .collect()
    }
}

/// Some coordinate is constant across all vertices.
pub fn facet_in_cube_facet(vertices: &[BinVector]) -> bool {
    let Some(first) = vertices.first() else {
        return false;
    };
    let full = crate::bitcore::mask(first.len());
    let all_ones = vertices.iter().fold(full, |acc, v| acc & v.bits());
    let any_ones = vertices.iter().fold(0, |acc, v| acc | v.bits());
    all_ones != 0 || any_ones != full
}

/// The simplex spanned by the facet opposite `facet` and `v`, as a
/// representation: column `j` replaced by `v`, or for the origin facet, the
/// columns moved so that `v` sits at the origin.
pub fn completion(p: &BinMatrix, facet: FacetId, v: &BinVector) -> Result<BinMatrix> {
    match facet {
        FacetId::Column(j) => p.replace_column(j, v),
        FacetId::Origin => {
            let cols: Vec<BinVector> = p.columns().iter().map(|c| c.xor(v)).collect();
            BinMatrix::from_columns(p.nrows(), &cols)
        }
    }
}

pub fn neighbor_search(p: &BinMatrix, facet: FacetId, target: Target) -> Result<NeighborReport> {
    search(p, facet, target, false)
}

/// Like [`neighbor_search`] but stops once two target completions other
/// than the opposite vertex are found.
pub fn neighbor_search_fast(
    p: &BinMatrix,
    facet: FacetId,
    target: Target,
) -> Result<NeighborReport> {
    search(p, facet, target, true)
}

fn search(p: &BinMatrix, facet: FacetId, target: Target, fast: bool) -> Result<NeighborReport> {
    let n = p.require_square()?;
    if n > 20 {
        return Err(Error::TooWide(n));
    }
    if determinant_bin(p)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let opposite_id = facet.vertex_id();
    let verts = facet_vertices(p, opposite_id)?;
    let opposite = crate::geometry::vertex(p, opposite_id)?;
    let projector = FacetProjector::new(&verts)?;
    let mut report = NeighborReport {
        facet,
        target,
        opposite,
        interior: !facet_in_cube_facet(&verts),
        candidates: Vec::new(),
        altitude_feet: Vec::new(),
        truncated: false,
    };
    let mut hits = 0;
    for bits in 0..(1u64 << n) {
        let v = BinVector::from_bits(bits, n)?;
        if verts.contains(&v) {
            continue;
        }
        if projector.project(&v)?.inside {
            report.altitude_feet.push(v);
        }
        let classification = classify(&completion(p, facet, &v)?);
        if v != opposite && target.accepts(classification.verdict) {
            hits += 1;
        }
        report.candidates.push(Candidate {
            vertex: v,
            classification,
        });
        if fast && hits >= 2 {
            report.truncated = bits + 1 < (1u64 << n);
            break;
        }
    }
    Ok(report)
}

/// Flips the coordinates where `q` is nonzero and zeroes the others.
pub fn restricted_antipode(p: &BinVector, q: &ExactVector) -> Result<BinVector> {
    if q.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    let flip = q
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    BinVector::from_bits(!p.bits() & flip, p.len())
}

/// Whether the line `v + αq` meets the cube in more than the point `v`,
/// i.e. moves into `I^n` for small `α` of one sign.
pub fn normal_line_enters_cube(v: &BinVector, q: &ExactVector) -> bool {
    use num_traits::Signed;
    [1i8, -1].iter().any(|&s| {
        q.iter().enumerate().all(|(j, x)| {
            if x.is_zero() {
                return true;
            }
            let up = x.is_positive() == (s > 0);
            // From 0 we must move up, from 1 down.
            up != v.get(j)
        })
    })
}

/// Checks, for a nonobtuse simplex whose fully indecomposable components
/// are all acute, that every interior facet has at most one nonobtuse
/// completion besides the existing vertex.
pub fn verify_one_neighbor_all_acute_components(p: &BinMatrix) -> Result<bool> {
    let bd = block_triangular_form(p)?;
    if let Some(j) = bd.blocks.iter().position(|b| !classify(b).is_acute()) {
        return Err(Error::ComponentNotAcute(j));
    }
    for facet in FacetId::all(p.nrows()) {
        let r = neighbor_search_fast(p, facet, Target::Nonobtuse)?;
        if r.interior && r.other_completions().len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normals to the facet opposite `facet`, pointing into the simplex.
pub fn facet_normal(p: &BinMatrix, facet: FacetId) -> Result<ExactVector> {
    let nm = normals(p)?;
    Ok(match facet {
        FacetId::Origin => nm.q,
        FacetId::Column(j) => nm.columns.get(j).cloned().ok_or(Error::IndexOutOfRange {
            index: j,
            len: p.ncols(),
        })?,
    })
}
