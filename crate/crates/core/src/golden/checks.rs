use num_bigint::BigInt;
use num_traits::Signed;

use super::fixtures::*;
use crate::bitcore::{BinMatrix, BinVector, Permutation};
use crate::canon::equivalent;
use crate::enumerate::{enumerate_classes, sweep_verify, Filter};
use crate::error::Result;
use crate::exact::{determinant_bin, gram, rat, transposed_inverse};
use crate::geometry::{classify, stochastic_split, Verdict};
use crate::neighbors::{facet_normal, neighbor_search, FacetId, Target};
use crate::ortho::{enumerate_upper_triangular_ortho, is_orthogonal_simplex};
use crate::structure::{block_triangular_form, diagonal_block_count, is_fully_indecomposable};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Collects named conditions; the check passes when all of them hold.
struct Conditions(Vec<String>);

impl Conditions {
    fn new() -> Self {
        Conditions(Vec::new())
    }

    fn require(&mut self, ok: bool, what: &str) {
        if !ok {
            self.0.push(what.to_string());
        }
    }

    fn finish(self, name: &'static str, ok_detail: String) -> GoldenCheck {
        let passed = self.0.is_empty();
        GoldenCheck {
            name,
            passed,
            detail: if passed {
                ok_detail
            } else {
                format!("failed: {}", self.0.join("; "))
            },
        }
    }
}

fn acute_seven() -> Result<GoldenCheck> {
    let p = acute_7();
    let q = transposed_inverse(&p)?;
    let split = stochastic_split(&q);
    let det = determinant_bin(&p)?;
    let c3: num_rational::BigRational = split.c.col_sums()[2].clone();
    let mut c = Conditions::new();
    c.require(classify(&p).verdict == Verdict::Acute, "acute");
    c.require(q == acute_7_transposed_inverse(), "transposed inverse");
    c.require(det.abs() == BigInt::from(13), "|det| = 13");
    c.require(split.d_is_doubly_stochastic(), "D doubly stochastic");
    c.require(c3 == rat(14, 13), "column sum of C");
    c.require(!classify(&p.transpose()).is_acute(), "transpose not acute");
    Ok(c.finish(
        "acute 7-simplex",
        format!("|det| = {}, C column sum = {c3}", det.abs()),
    ))
}

fn nonobtuse_seven() -> Result<GoldenCheck> {
    let p = nonobtuse_partly_7();
    let q = transposed_inverse(&p)?;
    let d = stochastic_split(&q).d_support();
    let support = p.support();
    let sizes = block_triangular_form(&p)?.sizes();
    let mut c = Conditions::new();
    c.require(
        classify(&p).verdict == Verdict::Nonobtuse,
        "nonobtuse, not acute",
    );
    c.require(
        q == nonobtuse_partly_7_transposed_inverse(),
        "transposed inverse",
    );
    c.require(!is_fully_indecomposable(&p)?, "partly decomposable");
    c.require(sizes == [1, 1, 1, 1, 3], "block sizes");
    c.require(
        d.iter().all(|e| support.contains(e)) && d.len() < support.len(),
        "support(D) strictly inside support(P)",
    );
    Ok(c.finish(
        "nonobtuse partly decomposable 7-simplex",
        format!("block sizes {sizes:?}"),
    ))
}

fn nonacute_nine() -> Result<GoldenCheck> {
    let p = nonacute_fi_9();
    let q = facet_normal(&p, FacetId::Origin)?;
    let g = gram(&p);
    let n = p.nrows();
    let bound =
        (0..n).all(|i| (0..n).all(|j| *g.get(i, j) >= BigInt::from(if i == j { 2 } else { 1 })));
    let mut c = Conditions::new();
    c.require(
        classify(&p).verdict == Verdict::Nonobtuse,
        "nonobtuse, not acute",
    );
    c.require(
        transposed_inverse(&p)? == nonacute_fi_9_transposed_inverse(),
        "transposed inverse",
    );
    c.require(is_fully_indecomposable(&p)?, "fully indecomposable");
    c.require(q == nonacute_fi_9_origin_normal(), "origin facet normal");
    c.require(bound, "Gram bound");
    Ok(c.finish(
        "fully indecomposable non-acute 9-simplex",
        "all conditions hold".into(),
    ))
}

fn tetrahedra() -> Result<GoldenCheck> {
    let reps = tetra_reps_3();
    let mut pairwise = true;
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            pairwise &= equivalent(&reps[a], &reps[b])?;
        }
    }
    let classes = enumerate_classes(3, &Filter::All)?.classes.len();
    let mut c = Conditions::new();
    c.require(pairwise, "representations equivalent");
    c.require(classes == 4, "four tetrahedra");
    Ok(c.finish("tetrahedra in the 3-cube", format!("{classes} classes")))
}

fn block_diagonal_pipeline() -> Result<GoldenCheck> {
    let p = nonobtuse_partly_7();
    let [m1, m2, m3, m4] = block_diagonal_sequence_7();
    let n = p.nrows();
    let id = Permutation::identity(n);
    let swap01 = Permutation::swap(n, 0, 1);
    let mut c = Conditions::new();
    c.require(
        diagonal_block_count(&p.xor_reflect(1)?) == 2,
        "reflection is block diagonal",
    );
    c.require(p.xor_reflect(1)? == m1, "step 1");
    c.require(m1.permute(&swap01, &id)? == m2, "step 2");
    c.require(m2.xor_reflect(5)? == m3, "step 3");
    c.require(
        m3.permute(&swap01, &Permutation::swap(n, 1, 5))? == m4,
        "step 4",
    );
    c.require(p.xor_reflect(5)? == m4, "step 5");
    Ok(c.finish(
        "block diagonalization sequence",
        "all steps reproduced".into(),
    ))
}

fn upper_triangular_counts() -> Result<GoldenCheck> {
    let mut c = Conditions::new();
    let mut counts = Vec::new();
    let mut fact = 1;
    for n in 1..=6 {
        fact *= n;
        let all = enumerate_upper_triangular_ortho(n)?;
        counts.push(all.len());
        c.require(all.len() == fact, "count n!");
        let mut ortho = true;
        for p in &all {
            ortho &= is_orthogonal_simplex(p)?;
        }
        c.require(ortho, "outputs orthogonal");
    }
    Ok(c.finish(
        "upper triangular orthogonal simplices",
        format!("counts {counts:?}"),
    ))
}

fn altitude_feet() -> Result<GoldenCheck> {
    let r = neighbor_search(&projection_5(), FacetId::Origin, Target::Nonobtuse)?;
    let mut feet: Vec<BinVector> = r.altitude_feet.clone();
    feet.sort_by_key(|v| v.to_string());
    let mut want: Vec<BinVector> = ["00000", "01111", "10000", "11111"]
        .iter()
        .map(|s| s.parse().expect("vector literal"))
        .collect();
    want.sort_by_key(|v| v.to_string());
    let mut c = Conditions::new();
    c.require(feet == want, "four altitude feet");
    c.require(
        facet_normal(&projection_5(), FacetId::Origin)? == projection_5_origin_normal(),
        "normal",
    );
    let shown: Vec<String> = feet.iter().map(|v| v.to_string()).collect();
    Ok(c.finish("altitude feet on an obtuse 5-simplex", shown.join(" ")))
}

fn sweep(
    name: &'static str,
    property: &str,
    dims: std::ops::RangeInclusive<usize>,
) -> Result<GoldenCheck> {
    let mut c = Conditions::new();
    let mut checked = 0;
    for n in dims {
        let r = sweep_verify(n, property)?;
        checked += r.checked;
        c.require(
            r.passed,
            &format!("n = {n}: {}", r.detail.unwrap_or_default()),
        );
    }
    Ok(c.finish(name, format!("{checked} classes checked")))
}

/// Every reference check, in a fixed order.
pub fn run_all() -> Result<Vec<GoldenCheck>> {
    let nine_fi_nonobtuse = {
        let p: BinMatrix = nonacute_fi_9();
        classify(&p).verdict == Verdict::Nonobtuse && is_fully_indecomposable(&p)?
    };
    let mut out = vec![
        acute_seven()?,
        nonobtuse_seven()?,
        nonacute_nine()?,
        tetrahedra()?,
        block_diagonal_pipeline()?,
        upper_triangular_counts()?,
        altitude_feet()?,
    ];
    let mut fi = sweep(
        "fully indecomposable nonobtuse implies acute (n <= 5)",
        "thm6.8-fi-implies-acute",
        1..=5,
    )?;
    if !nine_fi_nonobtuse {
        fi.passed = false;
        fi.detail = "9-dimensional exception not reproduced".into();
    }
    out.push(fi);
    out.push(sweep(
        "one neighbor for acute simplices (n <= 5)",
        "one-neighbor-acute",
        1..=5,
    )?);
    out.push(sweep(
        "one neighbor with acute components (n <= 5)",
        "one-neighbor-all-acute-components",
        1..=5,
    )?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_reference_checks_pass() {
        for check in run_all().unwrap() {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }
}
