//! Classification of 0/1-simplices by the signs of their inverse Gram matrix,
//! and the sign structure of the normal matrix `Q = P^{-T}`.
//!
//! Vertices of a representation `P` are numbered `0` for the origin and
//! `j + 1` for column `j`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bitcore::{BinMatrix, BinVector};
use crate::error::{Error, Result};
use crate::exact::{gram, inverse, transposed_inverse, ExactMatrix, ExactVector, IntMatrix};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Verdict {
    Degenerate,
    Obtuse,
    Nonobtuse,
    Acute,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [
        Verdict::Degenerate,
        Verdict::Obtuse,
        Verdict::Nonobtuse,
        Verdict::Acute,
    ];

    /// True for `Nonobtuse` and `Acute`.
    pub fn is_nonobtuse(self) -> bool {
        matches!(self, Verdict::Nonobtuse | Verdict::Acute)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Degenerate => "degenerate",
            Verdict::Obtuse => "obtuse",
            Verdict::Nonobtuse => "nonobtuse",
            Verdict::Acute => "acute",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict plus the entry of `B = (PᵀP)^{-1}` that decided it.
///
/// The witness `(i, j)` with `i != j` names an off-diagonal entry; `(i, i)`
/// names the sum of row `i`. For `Obtuse` it is the first positive
/// off-diagonal entry or negative row sum, for `Nonobtuse` the first zero
/// off-diagonal entry or zero row sum. `Acute` and `Degenerate` carry none.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<(usize, usize)>,
}

impl Classification {
    pub fn is_nonobtuse(&self) -> bool {
        self.verdict.is_nonobtuse()
    }

    pub fn is_acute(&self) -> bool {
        self.verdict == Verdict::Acute
    }
}

/// Classifies the simplex spanned by the origin and the columns of `p`.
/// `p` may be rectangular (`n x k`), in which case the `k x k` Gram matrix
/// is used.
pub fn classify(p: &BinMatrix) -> Classification {
    classify_gram(&gram(p))
}

/// Classification from a Gram matrix. `B` has the sign pattern of the
/// adjugate because `det(G) > 0` for independent columns.
pub fn classify_gram(g: &IntMatrix) -> Classification {
    let k = g.rows();
    let (adj, det) = g.adjugate().expect("Gram matrices are square");
    if det.is_zero() {
        return Classification {
            verdict: Verdict::Degenerate,
            witness: None,
        };
    }
    debug_assert!(det.is_positive());
    let mut first_zero = None;
    for i in 0..k {
        let mut sum = BigInt::zero();
        for j in 0..k {
            let e = adj.get(i, j);
            sum += e;
            if i == j {
                continue;
            }
            if e.is_positive() {
                return obtuse(i, j);
            }
            if e.is_zero() && first_zero.is_none() {
                first_zero = Some((i, j));
            }
        }
        if sum.is_negative() {
            return obtuse(i, i);
        }
        if sum.is_zero() && first_zero.is_none() {
            first_zero = Some((i, i));
        }
    }
    match first_zero {
        Some(w) => Classification {
            verdict: Verdict::Nonobtuse,
            witness: Some(w),
        },
        None => Classification {
            verdict: Verdict::Acute,
            witness: None,
        },
    }
}

fn obtuse(i: usize, j: usize) -> Classification {
    Classification {
        verdict: Verdict::Obtuse,
        witness: Some((i, j)),
    }
}

/// Number of right dihedral angles: zero off-diagonal entries of `B` (one per
/// pair of column facets) plus zero row sums (pairs involving the facet
/// opposite the origin).
pub fn right_dihedral_count(p: &BinMatrix) -> Result<usize> {
    let (adj, det) = gram(p).adjugate()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let k = adj.rows();
    let off = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| adj.get(i, j).is_zero())
        .count();
    let sums = (0..k)
        .filter(|&i| (0..k).map(|j| adj.get(i, j)).sum::<BigInt>().is_zero())
        .count();
    Ok(off + sums)
}

/// `Q = D - C` with `D`, `C` nonnegative and of disjoint support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StochasticSplit {
    pub d: ExactMatrix,
    pub c: ExactMatrix,
}

impl StochasticSplit {
    /// All row and column sums of `D` equal one.
    pub fn d_is_doubly_stochastic(&self) -> bool {
        let one = BigRational::one();
        self.d.row_sums().iter().all(|s| *s == one) && self.d.col_sums().iter().all(|s| *s == one)
    }

    /// All row sums of `C` are below one.
    pub fn c_is_row_substochastic(&self) -> bool {
        let one = BigRational::one();
        self.c.row_sums().iter().all(|s| *s < one)
    }

    pub fn d_support(&self) -> Vec<(usize, usize)> {
        self.d.support()
    }
}

pub fn stochastic_split(q: &ExactMatrix) -> StochasticSplit {
    let d = q.map(|x| {
        if x.is_positive() {
            x.clone()
        } else {
            BigRational::zero()
        }
    });
    let c = q.map(|x| {
        if x.is_negative() {
            -x.clone()
        } else {
            BigRational::zero()
        }
    });
    StochasticSplit { d, c }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SignViolation {
    pub row: usize,
    pub col: usize,
    /// Sign of `q_ij`: `1` or `-1`.
    pub q_sign: i8,
    pub p_entry: bool,
}

/// Outcome of comparing the sign pattern of `Q` with `P`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SignPatternReport {
    /// Entries with `q_ij > 0, p_ij = 0` or `q_ij < 0, p_ij = 1`.
    pub violations: Vec<SignViolation>,
    /// Entries with `q_ij = 0`; these are compatible with either value of `p_ij`.
    pub zero_entries: Vec<(usize, usize)>,
}

impl SignPatternReport {
    /// `q_ij > 0 => p_ij = 1` and `q_ij < 0 => p_ij = 0`.
    pub fn implications_hold(&self) -> bool {
        self.violations.is_empty()
    }

    /// `q_ij > 0 <=> p_ij = 1`, which also rules out zero entries.
    pub fn biconditional_holds(&self) -> bool {
        self.violations.is_empty() && self.zero_entries.is_empty()
    }
}

pub fn sign_pattern_check(p: &BinMatrix, q: &ExactMatrix) -> SignPatternReport {
    let mut report = SignPatternReport::default();
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            let x = q.get(i, j);
            let pij = p.get(i, j);
            if x.is_zero() {
                report.zero_entries.push((i, j));
            } else if x.is_positive() != pij {
                report.violations.push(SignViolation {
                    row: i,
                    col: j,
                    q_sign: if x.is_positive() { 1 } else { -1 },
                    p_entry: pij,
                });
            }
        }
    }
    report
}

/// Facet normals of a representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Normals {
    /// `columns[i]` is normal to the facet opposite column `i`, pointing
    /// into the simplex.
    pub columns: Vec<ExactVector>,
    /// Sum of the column normals; normal to the facet opposite the origin.
    pub q: ExactVector,
}

pub fn normals(p: &BinMatrix) -> Result<Normals> {
    let qm = transposed_inverse(p)?;
    Ok(normals_from(&qm))
}

pub(crate) fn normals_from(qm: &ExactMatrix) -> Normals {
    Normals {
        columns: (0..qm.cols()).map(|j| qm.column(j)).collect(),
        q: qm.row_sums(),
    }
}

/// Vertex `id` of the simplex: `0` is the origin, `j + 1` is column `j`.
pub fn vertex(p: &BinMatrix, id: usize) -> Result<BinVector> {
    match id {
        0 => Ok(BinVector::zeros(p.nrows())),
        _ if id <= p.ncols() => Ok(p.column(id - 1)),
        _ => Err(Error::IndexOutOfRange {
            index: id,
            len: p.ncols() + 1,
        }),
    }
}

/// All vertices except vertex `opposite`, in id order.
pub fn facet_vertices(p: &BinMatrix, opposite: usize) -> Result<Vec<BinVector>> {
    if opposite > p.ncols() {
        return Err(Error::IndexOutOfRange {
            index: opposite,
            len: p.ncols() + 1,
        });
    }
    (0..=p.ncols())
        .filter(|&id| id != opposite)
        .map(|id| vertex(p, id))
        .collect()
}

/// Orthogonal projection of a point onto the affine hull of a facet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Projection {
    /// Barycentric coordinates with respect to the facet vertices, in order.
    pub barycentric: ExactVector,
    /// All coordinates nonnegative: the foot lies on the closed facet.
    pub inside: bool,
}

pub fn project_onto_facet(facet: &[BinVector], v: &BinVector) -> Result<Projection> {
    FacetProjector::new(facet)?.project(v)
}

/// Precomputed projection onto the affine hull of a fixed facet.
#[derive(Clone, Debug)]
pub struct FacetProjector {
    base: BinVector,
    /// `(EᵀE)^{-1} Eᵀ` for the edge matrix `E` with columns `a_i - a_0`.
    solve: ExactMatrix,
}

impl FacetProjector {
    pub fn new(facet: &[BinVector]) -> Result<Self> {
        let Some(&base) = facet.first() else {
            return Err(Error::DegenerateFacet);
        };
        let n = base.len();
        if let Some(bad) = facet.iter().find(|a| a.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let edges = &facet[1..];
        let e = IntMatrix::from_fn(n, edges.len(), |i, j| {
            BigInt::from(i64::from(edges[j].get(i)) - i64::from(base.get(i)))
        });
        let et = e.transpose();
        let g_inv = inverse(&et.mul(&e)).map_err(|err| match err {
            Error::SingularMatrix => Error::DegenerateFacet,
            other => other,
        })?;
        Ok(FacetProjector {
            base,
            solve: g_inv.mul(&ExactMatrix::from_int(&et)),
        })
    }

    pub fn project(&self, v: &BinVector) -> Result<Projection> {
        let n = self.base.len();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let rel: ExactVector = (0..n)
            .map(|i| {
                BigRational::from_integer(BigInt::from(
                    i64::from(v.get(i)) - i64::from(self.base.get(i)),
                ))
            })
            .collect();
        let t = self.solve.mul_vec(&rel);
        let first = BigRational::one() - t.iter().sum::<BigRational>();
        let mut barycentric = Vec::with_capacity(t.len() + 1);
        barycentric.push(first);
        barycentric.extend(t);
        let inside = barycentric.iter().all(|x| !x.is_negative());
        Ok(Projection {
            barycentric,
            inside,
        })
    }
}

/// The sub-simplex on the given vertex ids, translated so that `subset[0]`
/// sits at the origin. The result is `n x (subset.len() - 1)`; its columns
/// are the other subset vertices XORed with the base vertex, which is a cube
/// symmetry and so preserves all angles.
pub fn subsimplex(p: &BinMatrix, subset: &[usize]) -> Result<BinMatrix> {
    let Some((&base_id, rest)) = subset.split_first() else {
        return Err(Error::DependentSubset);
    };
    let base = vertex(p, base_id)?;
    let cols = rest
        .iter()
        .map(|&id| Ok(vertex(p, id)?.xor(&base)))
        .collect::<Result<Vec<_>>>()?;
    let s = BinMatrix::from_columns(p.nrows(), &cols)?;
    if rest.is_empty() || gram(&s).determinant()?.is_zero() {
        return Err(Error::DependentSubset);
    }
    Ok(s)
}

/// `vᵀ B w` for `B = (PᵀP)^{-1}`.
pub fn gram_inverse_form(b: &ExactMatrix, v: &BinVector, w: &BinVector) -> BigRational {
    let mut acc = BigRational::zero();
    for i in v.support() {
        for j in w.support() {
            acc += b.get(i, j);
        }
    }
    acc
}
