//! Exhaustive enumeration of 0/1-simplices modulo cube symmetry, and sweeps
//! that evaluate structural predicates over every enumerated class.
//!
//! Classes are grown one vertex at a time. Level `k` holds the canonical
//! forms of all affinely independent vertex sets `{0, v_1, ..., v_k}` up to
//! symmetry; each is extended by every cube vertex, rejected if the rank
//! drops, and canonicalized again. When the filter only admits nonobtuse
//! (or acute) simplices, partial sets that fail it are dropped early since
//! every face of a nonobtuse (acute) simplex is nonobtuse (acute).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;

use crate::bitcore::{mask, BinMatrix, BinVector};
use crate::canon::canonical_vertex_set;
use crate::error::{Error, Result};
use crate::exact::{gram, gram_inverse, transposed_inverse};
use crate::geometry::{
    classify, gram_inverse_form, sign_pattern_check, stochastic_split, subsimplex, Verdict,
};
use crate::neighbors::{
    neighbor_search, verify_one_neighbor_all_acute_components, FacetId, Target,
};
use crate::ortho::is_orthogonal_simplex;
use crate::structure::{block_triangular_form, is_fully_indecomposable};

pub const MIN_ENUM_DIM: usize = 1;
pub const MAX_ENUM_DIM: usize = 6;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Filter {
    All,
    Nonobtuse,
    Acute,
    /// Every representation is fully indecomposable.
    FullyIndecomposable,
    Orthogonal,
    And(Vec<Filter>),
}

impl Filter {
    pub fn accepts(&self, p: &BinMatrix) -> Result<bool> {
        Ok(match self {
            Filter::All => true,
            Filter::Nonobtuse => classify(p).is_nonobtuse(),
            Filter::Acute => classify(p).is_acute(),
            Filter::FullyIndecomposable => {
                if !is_fully_indecomposable(p)? {
                    return Ok(false);
                }
                for c in 0..p.ncols() {
                    if !is_fully_indecomposable(&p.xor_reflect(c)?)? {
                        return Ok(false);
                    }
                }
                true
            }
            Filter::Orthogonal => is_orthogonal_simplex(p)?,
            Filter::And(fs) => {
                for f in fs {
                    if !f.accepts(p)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    fn implies_nonobtuse(&self) -> bool {
        match self {
            Filter::Nonobtuse | Filter::Acute | Filter::Orthogonal => true,
            Filter::And(fs) => fs.iter().any(Filter::implies_nonobtuse),
            _ => false,
        }
    }

    fn implies_acute(&self) -> bool {
        match self {
            Filter::Acute => true,
            Filter::And(fs) => fs.iter().any(Filter::implies_acute),
            _ => false,
        }
    }

    /// Whether a partial vertex set can still grow into an accepted simplex.
    fn keeps_face(&self, face: &BinMatrix) -> bool {
        if self.implies_acute() {
            classify(face).is_acute()
        } else if self.implies_nonobtuse() {
            classify(face).is_nonobtuse()
        } else {
            true
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::All => f.write_str("all"),
            Filter::Nonobtuse => f.write_str("nonobtuse"),
            Filter::Acute => f.write_str("acute"),
            Filter::FullyIndecomposable => f.write_str("fully-indecomposable"),
            Filter::Orthogonal => f.write_str("orthogonal"),
            Filter::And(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join("+"))
            }
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    /// Names joined by `+` or `,` combine with AND.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(['+', ','])
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .collect();
        let one = |name: &str| -> Result<Filter> {
            match name.to_ascii_lowercase().as_str() {
                "all" => Ok(Filter::All),
                "nonobtuse" => Ok(Filter::Nonobtuse),
                "acute" => Ok(Filter::Acute),
                "fully-indecomposable" | "fi" => Ok(Filter::FullyIndecomposable),
                "orthogonal" => Ok(Filter::Orthogonal),
                _ => Err(Error::UnknownFilter(name.to_string())),
            }
        };
        match parts.as_slice() {
            [] => Err(Error::UnknownFilter(s.to_string())),
            [single] => one(single),
            many => Ok(Filter::And(
                many.iter().map(|x| one(x)).collect::<Result<_>>()?,
            )),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnumerationResult {
    pub n: usize,
    pub filter: Filter,
    /// Canonical representatives in increasing order.
    pub classes: Vec<BinMatrix>,
    pub counts: BTreeMap<Verdict, usize>,
}

impl EnumerationResult {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.counts.get(&verdict).copied().unwrap_or(0)
    }
}

/// Linear independence of the given columns over the rationals.
fn independent_columns(n: usize, cols: &[u64]) -> bool {
    // Fraction-free elimination on the k x n transpose.
    let k = cols.len();
    if k > n {
        return false;
    }
    let mut a: Vec<Vec<i128>> = cols
        .iter()
        .map(|&c| (0..n).map(|i| ((c >> i) & 1) as i128).collect())
        .collect();
    let mut prev = 1i128;
    let mut col = 0;
    for r in 0..k {
        let pivot = loop {
            if col == n {
                return false;
            }
            if let Some(pr) = (r..k).find(|&i| a[i][col] != 0) {
                break pr;
            }
            col += 1;
        };
        a.swap(r, pivot);
        for i in r + 1..k {
            for j in col + 1..n {
                a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        col += 1;
    }
    true
}

fn check_dim(n: usize) -> Result<()> {
    if !(MIN_ENUM_DIM..=MAX_ENUM_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange {
            n,
            min: MIN_ENUM_DIM,
            max: MAX_ENUM_DIM,
        });
    }
    Ok(())
}

/// All classes of nondegenerate simplices in `I^n` passing `filter`, one
/// canonical representative each.
pub fn enumerate_classes(n: usize, filter: &Filter) -> Result<EnumerationResult> {
    check_dim(n)?;
    let mut level: Vec<BinMatrix> = vec![BinMatrix::zeros(n, 0)];
    for _ in 0..n {
        let mut next: Vec<BinMatrix> = level
            .par_iter()
            .flat_map_iter(|m| {
                let cols = m.column_bits();
                (1..=mask(n))
                    .filter(move |v| !cols.contains(v))
                    .filter_map(move |v| {
                        let mut ext = m.column_bits();
                        ext.push(v);
                        if !independent_columns(n, &ext) {
                            return None;
                        }
                        let face = BinMatrix::from_column_bits(n, &ext).expect("valid columns");
                        if !filter.keeps_face(&face) {
                            return None;
                        }
                        Some(canonical_vertex_set(&face).matrix)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        level = next;
    }
    let flags: Vec<bool> = level
        .par_iter()
        .map(|p| filter.accepts(p))
        .collect::<Result<_>>()?;
    let classes: Vec<BinMatrix> = level
        .into_iter()
        .zip(flags)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect();
    let mut counts = BTreeMap::new();
    for p in &classes {
        *counts.entry(classify(p).verdict).or_insert(0) += 1;
    }
    Ok(EnumerationResult {
        n,
        filter: filter.clone(),
        classes,
        counts,
    })
}

/// Structural statements checked class by class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Property {
    /// Acute: `D` doubly stochastic with the support of `P`, and the signs of
    /// `P^{-T}` follow `P`.
    SignPattern,
    /// Nonobtuse: the block triangular form exists with valid strips.
    Strips,
    /// Fully indecomposable nonobtuse with `n >= 2`: `PᵀP >= I + eeᵀ` and
    /// every triangle is acute.
    GramBound,
    /// Fully indecomposable nonobtuse implies acute.
    FullyIndecomposableImpliesAcute,
    /// Every face of a nonobtuse (acute) simplex is nonobtuse (acute).
    FiedlerFacets,
    /// Acute: every facet is interior (for `n >= 2`) and has at most one other
    /// acute and at most one other nonobtuse completion.
    OneNeighborAcute,
    /// Nonobtuse with acute components: every interior facet has at most
    /// one other nonobtuse completion.
    OneNeighborAllAcuteComponents,
    /// Nonobtuse: `vᵀ(PᵀP)^{-1}v̄ <= 0`, strictly for acute and nontrivial `v`.
    AntipodeForm,
    /// Nonobtuse: a vanishing antipode form splits the Gram matrix.
    ReducibleGram,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::SignPattern,
        Property::Strips,
        Property::GramBound,
        Property::FullyIndecomposableImpliesAcute,
        Property::FiedlerFacets,
        Property::OneNeighborAcute,
        Property::OneNeighborAllAcuteComponents,
        Property::AntipodeForm,
        Property::ReducibleGram,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::SignPattern => "thm3.1-sign",
            Property::Strips => "thm4.1-strips",
            Property::GramBound => "lem6.6-gram",
            Property::FullyIndecomposableImpliesAcute => "thm6.8-fi-implies-acute",
            Property::FiedlerFacets => "fiedler-facets",
            Property::OneNeighborAcute => "one-neighbor-acute",
            Property::OneNeighborAllAcuteComponents => "one-neighbor-all-acute-components",
            Property::AntipodeForm => "lem2.8-antipode",
            Property::ReducibleGram => "lem2.9-reducible",
        }
    }

    /// Classes the property speaks about.
    pub fn domain(self) -> Filter {
        match self {
            Property::SignPattern | Property::OneNeighborAcute => Filter::Acute,
            _ => Filter::Nonobtuse,
        }
    }

    /// `Ok(None)` if `p` lies outside the hypothesis, `Ok(Some(None))` if
    /// the statement holds and `Ok(Some(Some(reason)))` if it fails.
    pub fn check(self, p: &BinMatrix) -> Result<Option<Option<String>>> {
        let n = p.nrows();
        let c = classify(p);
        let fail = |msg: String| Ok(Some(Some(msg)));
        match self {
            Property::SignPattern => {
                if !c.is_acute() {
                    return Ok(None);
                }
                let q = transposed_inverse(p)?;
                let split = stochastic_split(&q);
                if !split.d_is_doubly_stochastic() {
                    return fail("D is not doubly stochastic".into());
                }
                if split.d_support() != p.support() {
                    return fail("support of D differs from support of P".into());
                }
                if !split.c_is_row_substochastic() {
                    return fail("C is not row substochastic".into());
                }
                let report = sign_pattern_check(p, &q);
                if !report.biconditional_holds() {
                    return fail(format!("sign violations {:?}", report.violations));
                }
            }
            Property::Strips => {
                if !c.is_nonobtuse() {
                    return Ok(None);
                }
                let bd = block_triangular_form(p)?;
                let q = transposed_inverse(p)?;
                let split = stochastic_split(&q);
                let support = p.support();
                if !split.d_support().iter().all(|e| support.contains(e)) {
                    return fail("support of D not inside support of P".into());
                }
                if bd
                    .blocks
                    .iter()
                    .any(|b| !is_fully_indecomposable(b).unwrap_or(false))
                {
                    return fail("diagonal block is partly decomposable".into());
                }
            }
            Property::GramBound => {
                if n < 2 || !c.is_nonobtuse() || !is_fully_indecomposable(p)? {
                    return Ok(None);
                }
                let g = gram(p);
                for i in 0..n {
                    for j in 0..n {
                        let bound = if i == j { 2 } else { 1 };
                        if *g.get(i, j) < bound.into() {
                            return fail(format!("Gram entry ({i}, {j}) below bound"));
                        }
                    }
                }
                for s in subsets(n + 1, 3) {
                    if !classify(&subsimplex(p, &s)?).is_acute() {
                        return fail(format!("triangle {s:?} not acute"));
                    }
                }
            }
            Property::FullyIndecomposableImpliesAcute => {
                if !c.is_nonobtuse() || !is_fully_indecomposable(p)? {
                    return Ok(None);
                }
                if !c.is_acute() {
                    return fail("fully indecomposable but not acute".into());
                }
            }
            Property::FiedlerFacets => {
                if !c.is_nonobtuse() {
                    return Ok(None);
                }
                for k in 2..=n {
                    for s in subsets(n + 1, k) {
                        let f = classify(&subsimplex(p, &s)?);
                        if !f.is_nonobtuse() || (c.is_acute() && !f.is_acute()) {
                            return fail(format!("face {s:?} is {}", f.verdict));
                        }
                    }
                }
            }
            Property::OneNeighborAcute => {
                if !c.is_acute() {
                    return Ok(None);
                }
                for facet in FacetId::all(n) {
                    let r = neighbor_search(p, facet, Target::Nonobtuse)?;
                    if n >= 2 && !r.interior {
                        return fail(format!("facet {facet} lies in a cube facet"));
                    }
                    let acute = r
                        .candidates
                        .iter()
                        .filter(|x| x.vertex != r.opposite && x.classification.is_acute())
                        .count();
                    if acute > 1 {
                        return fail(format!("facet {facet} has {acute} acute completions"));
                    }
                    let other = r.other_completions().len();
                    if other > 1 {
                        return fail(format!("facet {facet} has {other} nonobtuse completions"));
                    }
                }
            }
            Property::OneNeighborAllAcuteComponents => {
                if !c.is_nonobtuse() {
                    return Ok(None);
                }
                match verify_one_neighbor_all_acute_components(p) {
                    Ok(true) => {}
                    Ok(false) => {
                        return fail("interior facet with two nonobtuse completions".into())
                    }
                    Err(Error::ComponentNotAcute(_)) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
            Property::AntipodeForm | Property::ReducibleGram => {
                if !c.is_nonobtuse() {
                    return Ok(None);
                }
                let b = gram_inverse(p)?;
                let g = gram(p);
                for bits in 1..mask(n) {
                    let v = BinVector::from_bits(bits, n)?;
                    let w = v.antipode();
                    let val = gram_inverse_form(&b, &v, &w);
                    if self == Property::AntipodeForm {
                        if val.is_positive() || (c.is_acute() && !val.is_negative()) {
                            return fail(format!("form at {v} is {val}"));
                        }
                    } else if num_traits::Zero::is_zero(&val) {
                        let split = v.support().iter().all(|&i| {
                            w.support()
                                .iter()
                                .all(|&j| num_traits::Zero::is_zero(g.get(i, j)))
                        });
                        if !split {
                            return fail(format!("form vanishes at {v} but Gram does not split"));
                        }
                    }
                }
            }
        }
        Ok(Some(None))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Increasing `k`-subsets of `0..m`.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << m)
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| (0..m).filter(|&i| (b >> i) & 1 == 1).collect())
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SweepReport {
    pub property: Property,
    pub n: usize,
    /// Classes within the property's hypothesis.
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<BinMatrix>,
    pub detail: Option<String>,
}

/// Evaluates a property on the given classes; reports the first failure in
/// class order.
pub fn sweep_classes(property: Property, n: usize, classes: &[BinMatrix]) -> Result<SweepReport> {
    let outcomes: Vec<Option<Option<String>>> = classes
        .par_iter()
        .map(|p| property.check(p))
        .collect::<Result<_>>()?;
    let checked = outcomes.iter().filter(|o| o.is_some()).count();
    let failure = outcomes
        .into_iter()
        .zip(classes)
        .find_map(|(o, p)| o.flatten().map(|msg| (p.clone(), msg)));
    Ok(SweepReport {
        property,
        n,
        checked,
        passed: failure.is_none(),
        counterexample: failure.as_ref().map(|f| f.0.clone()),
        detail: failure.map(|f| f.1),
    })
}

/// Enumerates the classes in the property's domain for dimension `n` and
/// checks each one.
pub fn sweep_verify(n: usize, property: &str) -> Result<SweepReport> {
    let property: Property = property.parse()?;
    let classes = enumerate_classes(n, &property.domain())?.classes;
    sweep_classes(property, n, &classes)
}
