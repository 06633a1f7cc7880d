use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use nonobtuse::canon::OriginChoice;
use nonobtuse::exact::{determinant_bin, fmt_rational, transposed_inverse};
use nonobtuse::geometry::{normals, right_dihedral_count, sign_pattern_check, stochastic_split};
use nonobtuse::neighbors::facet_normal;
use nonobtuse::ortho::tree_classes;
use nonobtuse::structure::Operation;
use nonobtuse::*;

mod report;

use report::*;

#[derive(Parser, Debug)]
#[command(name = "simplex01", version, about = "Exact analysis of 0/1-simplices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Transpose the input matrix after reading it.
    #[arg(long, global = true)]
    transpose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the simplex as degenerate, obtuse, nonobtuse or acute.
    Classify { file: PathBuf },
    /// Block triangular form and fully indecomposable components.
    Decompose { file: PathBuf },
    /// Completions of facets by other cube vertices.
    Neighbors {
        file: PathBuf,
        /// Vertex opposite the facet: 0 for the origin, j for column j.
        #[arg(long)]
        facet: Option<usize>,
        #[arg(long, default_value = "nonobtuse")]
        target: String,
    },
    /// All simplices in the n-cube up to symmetry.
    Enumerate {
        n: usize,
        /// Filter names joined by `+`: all, nonobtuse, acute,
        /// fully-indecomposable, orthogonal.
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Upper triangular orthogonal simplices grouped by spanning tree.
    Ortho { n: usize },
    /// Canonical representative of the input's class.
    Canon { file: PathBuf },
    /// Run the built-in reference checks.
    VerifyPaper,
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// Failures split by exit status.
enum Failure {
    Usage(anyhow::Error),
    Analysis(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFilter(_)
            | Error::UnknownProperty(_)
            | Error::Parse { .. }
            | Error::DimensionOutOfRange { .. }
            | Error::TooWide(_) => Failure::Usage(e.into()),
            _ => Failure::Analysis(e.into()),
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn rationals(v: &[nonobtuse::exact::Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn read_matrix(path: &PathBuf, transpose: bool) -> CmdResult<(BinMatrix, InputInfo)> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not UTF-8", path.display()))
        .map_err(Failure::Usage)?;
    let mut p = BinMatrix::parse(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Usage)?;
    if transpose {
        p = p.transpose();
    }
    let info = InputInfo {
        path: path.display().to_string(),
        sha256: hex(&Sha256::digest(&bytes)),
        rows: p.nrows(),
        cols: p.ncols(),
        transposed: transpose,
        matrix: p.to_row_strings(),
    };
    Ok((p, info))
}

fn classify_cmd(p: &BinMatrix) -> CmdResult<Results> {
    let c = classify(p);
    let square = p.is_square();
    let det = if square {
        determinant_bin(p)?.to_string()
    } else {
        "n/a".into()
    };
    let nonsingular = square && c.verdict != Verdict::Degenerate;
    let mut r = ClassifyResult {
        verdict: c.verdict.to_string(),
        acute: c.is_acute(),
        nonobtuse: c.is_nonobtuse(),
        witness: c.witness.map(|(i, j)| [i, j]),
        determinant: det,
        fully_indecomposable: square && is_fully_indecomposable(p)?,
        transposed_inverse: None,
        origin_normal: None,
        d_doubly_stochastic: None,
        c_row_substochastic: None,
        sign_violations: None,
        right_dihedral_angles: None,
    };
    if nonsingular {
        let q = transposed_inverse(p)?;
        let split = stochastic_split(&q);
        r.transposed_inverse = Some(q.to_strings());
        r.origin_normal = Some(rationals(&normals(p)?.q));
        r.d_doubly_stochastic = Some(split.d_is_doubly_stochastic());
        r.c_row_substochastic = Some(split.c_is_row_substochastic());
        r.sign_violations = Some(sign_pattern_check(p, &q).violations.len());
        r.right_dihedral_angles = Some(right_dihedral_count(p)?);
    }
    Ok(Results::Classify(r))
}

fn decompose_cmd(p: &BinMatrix) -> CmdResult<Results> {
    let bd = block_triangular_form(p)?;
    let cs = indecomposable_components(p)?;
    let fi = bd.blocks.len() == 1;
    let (block_diagonal, operations) = if fi {
        (None, Vec::new())
    } else {
        let (m, ops) = block_diagonalize(p)?;
        let ops = ops
            .iter()
            .map(|op| match op {
                Operation::Permute { rows, cols } => {
                    format!(
                        "permute rows {:?} cols {:?}",
                        rows.as_slice(),
                        cols.as_slice()
                    )
                }
                Operation::Reflect { column } => format!("reflect column {column}"),
            })
            .collect();
        (Some(m.to_row_strings()), ops)
    };
    Ok(Results::Decompose(DecomposeResult {
        fully_indecomposable: fi,
        row_perm: bd.row_perm.as_slice().to_vec(),
        col_perm: bd.col_perm.as_slice().to_vec(),
        triangular_form: bd.form.to_row_strings(),
        block_sizes: bd.sizes(),
        strips: bd
            .strips
            .iter()
            .map(|s| StripInfo {
                nu: s.nu.to_string(),
                source_column: s.source_column,
            })
            .collect(),
        components: cs
            .components
            .iter()
            .map(|c| ComponentInfo {
                dimension: c.dimension,
                attachment: c.attachment,
                vertices: c.vertices.clone(),
            })
            .collect(),
        block_diagonal,
        operations,
    }))
}

fn neighbors_cmd(p: &BinMatrix, facet: Option<usize>, target: &str) -> CmdResult<Results> {
    let target: Target = target.parse()?;
    if !p.is_square() {
        return Err(Error::NotSquare {
            rows: p.nrows(),
            cols: p.ncols(),
        }
        .into());
    }
    let n = p.nrows();
    let facets: Vec<FacetId> = match facet {
        Some(k) if k > n => {
            return Err(Failure::Usage(anyhow::anyhow!(
                "facet {k} out of range, expected 0..={n}"
            )))
        }
        Some(k) => vec![FacetId::from_vertex_id(k)],
        None => FacetId::all(n).collect(),
    };
    let mut out = Vec::new();
    for f in facets {
        let r = neighbor_search(p, f, target)?;
        out.push(FacetResult {
            facet: f.to_string(),
            opposite: r.opposite.to_string(),
            interior: r.interior,
            normal: rationals(&facet_normal(p, f)?),
            completions: r.completions().iter().map(|v| v.to_string()).collect(),
            other_completions: r
                .other_completions()
                .iter()
                .map(|v| v.to_string())
                .collect(),
            altitude_feet: r.altitude_feet.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(Results::Neighbors(NeighborsResult {
        target: target.to_string(),
        facets: out,
    }))
}

fn enumerate_cmd(n: usize, filter: &str) -> CmdResult<Results> {
    let filter: Filter = filter.parse()?;
    let r = enumerate_classes(n, &filter)?;
    Ok(Results::Enumerate(EnumerateResult {
        n,
        filter: filter.to_string(),
        class_count: r.classes.len(),
        counts: r.counts.iter().map(|(v, c)| (v.to_string(), *c)).collect(),
        classes: r.classes.iter().map(|p| p.to_row_strings()).collect(),
    }))
}

fn ortho_cmd(n: usize) -> CmdResult<Results> {
    let reps = enumerate_upper_triangular_ortho(n)?;
    let trees: Vec<OrthoTree> = reps
        .iter()
        .map(spanning_tree)
        .collect::<nonobtuse::Result<_>>()?;
    let sizes = tree_classes(&trees);
    let mut classes = Vec::new();
    for (key, count) in &sizes {
        let i = trees
            .iter()
            .position(|t| &t.canonical_encoding() == key)
            .expect("class has a member");
        classes.push(OrthoClass {
            representative: reps[i].to_row_strings(),
            tree_edges: trees[i].edges.iter().map(|&(a, b)| [a, b]).collect(),
            degree_sequence: trees[i].degree_sequence(),
            representations: *count,
        });
    }
    Ok(Results::Ortho(OrthoResult {
        n,
        upper_triangular_count: reps.len(),
        tree_class_count: classes.len(),
        classes,
    }))
}

fn canon_cmd(p: &BinMatrix) -> CmdResult<Results> {
    let cf = canonical_form(p)?;
    Ok(Results::Canon(CanonResult {
        canonical: cf.matrix.to_row_strings(),
        origin: match cf.origin {
            OriginChoice::Keep => "keep".into(),
            OriginChoice::Column(c) => c.to_string(),
        },
        row_perm: cf.row_perm.as_slice().to_vec(),
        col_perm: cf.col_perm.as_slice().to_vec(),
    }))
}

fn verify_cmd() -> CmdResult<Results> {
    let checks: Vec<CheckResult> = nonobtuse::golden::run_all()?
        .into_iter()
        .map(|c| CheckResult {
            name: c.name.to_string(),
            passed: c.passed,
            detail: c.detail,
        })
        .collect();
    Ok(Results::VerifyPaper(VerifyResult {
        all_passed: checks.iter().all(|c| c.passed),
        checks,
    }))
}

fn run(cli: &Cli) -> CmdResult<(Option<InputInfo>, Results)> {
    let load = |file: &PathBuf| read_matrix(file, cli.transpose);
    Ok(match &cli.command {
        Command::Classify { file } => {
            let (p, info) = load(file)?;
            (Some(info), classify_cmd(&p)?)
        }
        Command::Decompose { file } => {
            let (p, info) = load(file)?;
            (Some(info), decompose_cmd(&p)?)
        }
        Command::Neighbors {
            file,
            facet,
            target,
        } => {
            let (p, info) = load(file)?;
            (Some(info), neighbors_cmd(&p, *facet, target)?)
        }
        Command::Enumerate { n, filter } => (None, enumerate_cmd(*n, filter)?),
        Command::Ortho { n } => (None, ortho_cmd(*n)?),
        Command::Canon { file } => {
            let (p, info) = load(file)?;
            (Some(info), canon_cmd(&p)?)
        }
        Command::VerifyPaper => (None, verify_cmd()?),
    })
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("SIMPLEX_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .with_context(|| format!("SIMPLEX_THREADS must be a number, got {value:?}"))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok((input, results)) => {
            let failed = matches!(&results, Results::VerifyPaper(v) if !v.all_passed);
            let report = Report {
                command: std::env::args().skip(1).collect(),
                input,
                results,
            };
            let text = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
                Format::Text => report.to_text(),
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), text.as_bytes());
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
