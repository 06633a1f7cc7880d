//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::time::{Duration, Instant};

use nonobtuse::enumerate::{sweep_classes, Property};
use nonobtuse::exact::{determinant, determinant_bin, gram, rat, transposed_inverse, IntMatrix};
use nonobtuse::geometry::stochastic_split;
use nonobtuse::golden;
use nonobtuse::neighbors::facet_normal;
use nonobtuse::structure::diagonal_block_count;
use nonobtuse::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Unfiltered classes for n = 1..=5, shared by several criteria.
struct Classes(Vec<Vec<BinMatrix>>);

impl Classes {
    fn compute() -> Self {
        Classes(
            (1..=5)
                .map(|n| {
                    enumerate_classes(n, &Filter::All)
                        .expect("enumeration")
                        .classes
                })
                .collect(),
        )
    }

    fn of(&self, n: usize) -> &[BinMatrix] {
        &self.0[n - 1]
    }

    fn filtered(&self, n: usize, f: impl Fn(&BinMatrix) -> bool) -> Vec<BinMatrix> {
        self.of(n).iter().filter(|p| f(p)).cloned().collect()
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = golden::acute_7();
    let q = transposed_inverse(&p).map_err(err)?;
    let split = stochastic_split(&q);
    let det = determinant_bin(&p).map_err(err)?;
    ensure(classify(&p).verdict == Verdict::Acute, "not acute")?;
    ensure(
        q == golden::acute_7_transposed_inverse(),
        "transposed inverse differs",
    )?;
    ensure(
        det.abs() == BigInt::from(13),
        format!("|det| = {}", det.abs()),
    )?;
    ensure(
        split
            .d
            .row_sums()
            .iter()
            .chain(split.d.col_sums().iter())
            .all(|s| *s == rat(1, 1)),
        "D not doubly stochastic",
    )?;
    ensure(split.c.col_sums()[2] == rat(14, 13), "C column sum")?;
    ensure(
        classify(&p.transpose()).verdict != Verdict::Acute,
        "transpose acute",
    )?;
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("|det P| = 13, C column sum 14/13, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let p = golden::nonobtuse_partly_7();
    let c = classify(&p);
    ensure(
        c.verdict == Verdict::Nonobtuse,
        format!("verdict {}", c.verdict),
    )?;
    let q = transposed_inverse(&p).map_err(err)?;
    ensure(
        q == golden::nonobtuse_partly_7_transposed_inverse(),
        "transposed inverse differs",
    )?;
    ensure(
        !is_fully_indecomposable(&p).map_err(err)?,
        "fully indecomposable",
    )?;
    let sizes = block_triangular_form(&p).map_err(err)?.sizes();
    ensure(sizes == [1, 1, 1, 1, 3], format!("block sizes {sizes:?}"))?;
    let d = stochastic_split(&q).d_support();
    let s = p.support();
    ensure(
        d.iter().all(|e| s.contains(e)),
        "support(D) not inside support(P)",
    )?;
    ensure(d.len() < s.len(), "support(D) equals support(P)")?;
    Ok(format!(
        "block sizes {sizes:?}, |supp D| = {} < |supp P| = {}",
        d.len(),
        s.len()
    ))
}

fn criterion_3() -> Outcome {
    let p = golden::nonacute_fi_9();
    ensure(
        classify(&p).verdict == Verdict::Nonobtuse,
        "not nonobtuse-only",
    )?;
    ensure(
        is_fully_indecomposable(&p).map_err(err)?,
        "partly decomposable",
    )?;
    let q = facet_normal(&p, FacetId::Origin).map_err(err)?;
    ensure(
        q == golden::nonacute_fi_9_origin_normal(),
        "origin facet normal differs",
    )?;
    let g = gram(&p);
    for i in 0..9 {
        for j in 0..9 {
            let bound = BigInt::from(if i == j { 2 } else { 1 });
            ensure(*g.get(i, j) >= bound, format!("Gram entry ({i}, {j})"))?;
        }
    }
    let shown: Vec<String> = q.iter().map(|x| x.to_string()).collect();
    Ok(format!("q = ({})", shown.join(", ")))
}

fn criterion_4(classes: &Classes) -> Outcome {
    let reps = golden::tetra_reps_3();
    for a in 0..reps.len() {
        for b in 0..reps.len() {
            ensure(
                equivalent(&reps[a], &reps[b]).map_err(err)?,
                format!("reps {a}, {b} differ"),
            )?;
        }
    }
    let n3 = classes.of(3).len();
    ensure(n3 == 4, format!("{n3} classes"))?;
    Ok("4 representations equivalent, 4 classes at n = 3".into())
}

fn criterion_5() -> Outcome {
    let p = golden::nonobtuse_partly_7();
    let [m1, m2, m3, m4] = golden::block_diagonal_sequence_7();
    let n = 7;
    let reflected = p.xor_reflect(1).map_err(err)?;
    ensure(
        diagonal_block_count(&reflected) == 2,
        "reflection not block diagonal",
    )?;
    ensure(reflected == m1, "step 1")?;
    let swap01 = Permutation::swap(n, 0, 1);
    ensure(
        m1.permute(&swap01, &Permutation::identity(n))
            .map_err(err)?
            == m2,
        "step 2",
    )?;
    ensure(m2.xor_reflect(5).map_err(err)? == m3, "step 3")?;
    ensure(
        m3.permute(&swap01, &Permutation::swap(n, 1, 5))
            .map_err(err)?
            == m4,
        "step 4",
    )?;
    ensure(p.xor_reflect(5).map_err(err)? == m4, "step 5")?;
    let (bd, ops) = block_diagonalize(&p).map_err(err)?;
    ensure(
        diagonal_block_count(&bd) >= 2,
        "block_diagonalize output not block diagonal",
    )?;
    ensure(
        equivalent(&bd, &p).map_err(err)?,
        "block_diagonalize left the class",
    )?;
    Ok(format!(
        "sequence reproduced; block_diagonalize used {} moves",
        ops.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=6 {
        let all = enumerate_upper_triangular_ortho(n).map_err(err)?;
        for p in &all {
            ensure(
                is_orthogonal_simplex(p).map_err(err)?,
                format!("{p:?} not orthogonal"),
            )?;
        }
        counts.push(all.len());
    }
    ensure(
        counts == [1, 2, 6, 24, 120, 720],
        format!("counts {counts:?}"),
    )?;
    Ok(format!("counts {counts:?}"))
}

fn criterion_7() -> Outcome {
    let r = neighbor_search(&golden::projection_5(), FacetId::Origin, Target::Nonobtuse)
        .map_err(err)?;
    let mut feet: Vec<String> = r.altitude_feet.iter().map(|v| v.to_string()).collect();
    feet.sort();
    ensure(
        feet == ["00000", "01111", "10000", "11111"],
        format!("feet {feet:?}"),
    )?;
    Ok(format!("feet {}", feet.join(" ")))
}

fn run_sweep(property: Property, classes: &Classes) -> std::result::Result<usize, String> {
    let mut checked = 0;
    for n in 1..=5 {
        let r = sweep_classes(property, n, classes.of(n)).map_err(err)?;
        ensure(
            r.passed,
            format!(
                "{property} fails at n = {n}: {:?} on {:?}",
                r.detail, r.counterexample
            ),
        )?;
        checked += r.checked;
    }
    Ok(checked)
}

fn criterion_8(classes: &Classes) -> Outcome {
    let checked = run_sweep(Property::FullyIndecomposableImpliesAcute, classes)?;
    let mut fi_nonobtuse = 0;
    for n in 1..=5 {
        for p in classes.of(n) {
            let c = classify(p);
            if c.is_nonobtuse() && is_fully_indecomposable(p).map_err(err)? {
                fi_nonobtuse += 1;
                ensure(
                    c.is_acute(),
                    format!("{p:?} is fully indecomposable, not acute"),
                )?;
            }
        }
    }
    ensure(checked == fi_nonobtuse, "sweep coverage mismatch")?;
    let p9 = golden::nonacute_fi_9();
    ensure(
        classify(&p9).verdict == Verdict::Nonobtuse && is_fully_indecomposable(&p9).map_err(err)?,
        "n = 9 exception not reproduced",
    )?;
    Ok(format!(
        "{checked} fully indecomposable nonobtuse classes, all acute"
    ))
}

fn criterion_9(classes: &Classes) -> Outcome {
    let acute = run_sweep(Property::OneNeighborAcute, classes)?;
    let components = run_sweep(Property::OneNeighborAllAcuteComponents, classes)?;
    ensure(acute > 0 && components > 0, "empty sweep")?;
    Ok(format!(
        "{acute} acute classes, {components} classes with acute components"
    ))
}

fn random_move(rng: &mut StdRng, p: &BinMatrix) -> BinMatrix {
    let n = p.nrows();
    let perm = |rng: &mut StdRng| {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::new(v).unwrap()
    };
    match rng.gen_range(0..3) {
        0 => p.permute(&Permutation::identity(n), &perm(rng)).unwrap(),
        1 => p.permute(&perm(rng), &Permutation::identity(n)).unwrap(),
        _ => p.xor_reflect(rng.gen_range(0..n)).unwrap(),
    }
}

fn laplace(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * laplace(&minor)
        })
        .sum()
}

/// Some `r` rows share zeros in `n - r` columns.
fn brute_partly_decomposable(a: &BinMatrix) -> bool {
    let n = a.nrows();
    n > 1
        && (1u64..(1 << n) - 1).any(|rows| {
            let r = rows.count_ones() as usize;
            let used = (0..n)
                .filter(|&i| rows >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | a.row_bits()[i]);
            n - used.count_ones() as usize >= n - r
        })
}

fn criterion_10(classes: &Classes) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // Invariance under random move sequences.
    let mut samples: Vec<BinMatrix> = Vec::new();
    for n in 2..=5 {
        let nonobtuse = classes.filtered(n, |p| classify(p).is_nonobtuse());
        samples.extend(nonobtuse.iter().take(3).cloned());
        samples.extend(classes.of(n).iter().rev().take(2).cloned());
    }
    samples.push(golden::path(6));
    samples.push(golden::corner(6));
    while samples.len() < 26 {
        let rows: Vec<u64> = (0..6).map(|_| rng.gen_range(0..64)).collect();
        let p = BinMatrix::from_row_bits(6, 6, rows).unwrap();
        if !determinant_bin(&p).unwrap().is_zero() {
            samples.push(p);
        }
    }
    for p in &samples {
        let verdict = classify(p).verdict;
        let nonobtuse = verdict.is_nonobtuse();
        let fi = is_fully_indecomposable(p).map_err(err)?;
        let ortho = is_orthogonal_simplex(p).map_err(err)?;
        let canon = canonical_form(p).map_err(err)?.matrix;
        for _ in 0..1000 {
            let len = rng.gen_range(1..=4);
            let mut m = p.clone();
            for _ in 0..len {
                m = random_move(&mut rng, &m);
            }
            ensure(
                classify(&m).verdict == verdict,
                format!("verdict changed for {p:?}"),
            )?;
            ensure(
                is_orthogonal_simplex(&m).map_err(err)? == ortho,
                "orthogonality changed",
            )?;
            if nonobtuse {
                // All representations of a nonobtuse simplex share decomposability.
                ensure(
                    is_fully_indecomposable(&m).map_err(err)? == fi,
                    "decomposability changed",
                )?;
            }
            ensure(
                canonical_form(&m).map_err(err)?.matrix == canon,
                "canonical form changed",
            )?;
        }
        // Row and column permutations alone preserve decomposability of any matrix.
        for _ in 0..50 {
            let n = p.nrows();
            let mut r: Vec<usize> = (0..n).collect();
            let mut c: Vec<usize> = (0..n).collect();
            r.shuffle(&mut rng);
            c.shuffle(&mut rng);
            let m = p
                .permute(&Permutation::new(r).unwrap(), &Permutation::new(c).unwrap())
                .unwrap();
            ensure(
                is_fully_indecomposable(&m).map_err(err)? == fi,
                "permutation changed decomposability",
            )?;
        }
    }

    // Decomposability against the subset oracle.
    for n in 1..=3 {
        for bits in 0u64..1 << (n * n) {
            let rows: Vec<u64> = (0..n).map(|i| bits >> (i * n) & ((1 << n) - 1)).collect();
            let a = BinMatrix::from_row_bits(n, n, rows).unwrap();
            let fast = find_partition_witness(&a).map_err(err)?.is_some();
            ensure(
                fast == brute_partly_decomposable(&a),
                format!("witness mismatch on {a:?}"),
            )?;
        }
    }
    for _ in 0..2000 {
        let rows: Vec<u64> = (0..6)
            .map(|_| rng.gen_range(0..64) | rng.gen_range(0..64))
            .collect();
        let a = BinMatrix::from_row_bits(6, 6, rows).unwrap();
        let fast = find_partition_witness(&a).map_err(err)?.is_some();
        ensure(
            fast == brute_partly_decomposable(&a),
            format!("witness mismatch on {a:?}"),
        )?;
    }

    // Determinant against cofactor expansion.
    for n in 1..=4 {
        for bits in 0u64..1 << (n * n) {
            let m: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| (bits >> (i * n + j) & 1) as i64).collect())
                .collect();
            let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
            let d = determinant(&IntMatrix::from_i64(&rows)).map_err(err)?;
            ensure(
                d == BigInt::from(laplace(&m)),
                format!("determinant mismatch on {m:?}"),
            )?;
        }
    }

    // Antipode forms, reducibility and faces over all nonobtuse classes.
    let mut swept = 0;
    for property in [
        Property::AntipodeForm,
        Property::ReducibleGram,
        Property::FiedlerFacets,
    ] {
        swept += run_sweep(property, classes)?;
    }

    // Zero row sums of the normal on the last block of every triangular form
    // with a nonzero last strip, over all representations.
    let mut forms = 0;
    for n in 2..=5 {
        for p in classes.filtered(n, |p| classify(p).is_nonobtuse()) {
            let reps = std::iter::once(p.clone()).chain((0..n).map(|c| p.xor_reflect(c).unwrap()));
            for r in reps {
                let bd = block_triangular_form(&r).map_err(err)?;
                if bd.blocks.len() < 2 {
                    continue;
                }
                let (diag, _) = block_diagonalize(&r).map_err(err)?;
                ensure(
                    diagonal_block_count(&diag) >= 2,
                    format!("{r:?} not block diagonalized"),
                )?;
                if bd.strips.last().unwrap().source_column.is_none() {
                    continue;
                }
                let q = transposed_inverse(&bd.form).map_err(err)?.row_sums();
                let start = *bd.offsets.last().unwrap();
                ensure(
                    q[start..].iter().all(|x| x.is_zero()),
                    format!("nonzero row sum for {r:?}"),
                )?;
                forms += 1;
            }
        }
    }
    ensure(forms > 0, "no triangular forms with a nonzero strip")?;

    Ok(format!(
        "{} samples x 1000 move sequences, {swept} sweep checks, {forms} strip forms",
        samples.len()
    ))
}

#[test]
fn acceptance() {
    let classes = Classes::compute();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "acute 7-simplex", criterion_1()),
        (2, "nonobtuse partly decomposable 7-simplex", criterion_2()),
        (3, "fully indecomposable non-acute 9-simplex", criterion_3()),
        (4, "tetrahedra in the 3-cube", criterion_4(&classes)),
        (5, "block diagonalization sequence", criterion_5()),
        (6, "upper triangular orthogonal simplices", criterion_6()),
        (7, "altitude feet on an obtuse 5-simplex", criterion_7()),
        (
            8,
            "fully indecomposable nonobtuse implies acute, n <= 5",
            criterion_8(&classes),
        ),
        (9, "one neighbor sweeps, n <= 5", criterion_9(&classes)),
        (10, "property suites", criterion_10(&classes)),
    ];
    let mut failed = 0;
    let mut lines = String::new();
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => lines += &format!("PASS criterion {k:>2}: {name} ({detail})\n"),
            Err(why) => {
                failed += 1;
                lines += &format!("FAIL criterion {k:>2}: {name} ({why})\n");
            }
        }
    }
    // Written straight to stderr so the lines show up without --nocapture.
    let _ = std::io::Write::write_all(&mut std::io::stderr(), lines.as_bytes());
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
