//! Structured report emitted by every subcommand. Rationals are written as
//! `"p/q"` strings so that nothing is rounded.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    /// The command line, without the program name.
    pub command: Vec<String>,
    pub input: Option<InputInfo>,
    pub results: Results,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InputInfo {
    pub path: String,
    /// Hex SHA-256 of the file contents.
    pub sha256: String,
    pub rows: usize,
    pub cols: usize,
    pub transposed: bool,
    pub matrix: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Results {
    Classify(ClassifyResult),
    Decompose(DecomposeResult),
    Neighbors(NeighborsResult),
    Enumerate(EnumerateResult),
    Ortho(OrthoResult),
    Canon(CanonResult),
    VerifyPaper(VerifyResult),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyResult {
    pub verdict: String,
    pub acute: bool,
    pub nonobtuse: bool,
    pub witness: Option<[usize; 2]>,
    pub determinant: String,
    pub fully_indecomposable: bool,
    /// Present for nonsingular input.
    pub transposed_inverse: Option<Vec<Vec<String>>>,
    pub origin_normal: Option<Vec<String>>,
    pub d_doubly_stochastic: Option<bool>,
    pub c_row_substochastic: Option<bool>,
    pub sign_violations: Option<usize>,
    pub right_dihedral_angles: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StripInfo {
    pub nu: String,
    pub source_column: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentInfo {
    pub dimension: usize,
    pub attachment: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecomposeResult {
    pub fully_indecomposable: bool,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub triangular_form: Vec<String>,
    pub block_sizes: Vec<usize>,
    pub strips: Vec<StripInfo>,
    pub components: Vec<ComponentInfo>,
    /// `[[N, 0], [0, A]]` form, absent when fully indecomposable.
    pub block_diagonal: Option<Vec<String>>,
    pub operations: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FacetResult {
    /// `origin` or a column index.
    pub facet: String,
    pub opposite: String,
    pub interior: bool,
    pub normal: Vec<String>,
    pub completions: Vec<String>,
    pub other_completions: Vec<String>,
    pub altitude_feet: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NeighborsResult {
    pub target: String,
    pub facets: Vec<FacetResult>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerateResult {
    pub n: usize,
    pub filter: String,
    pub class_count: usize,
    pub counts: std::collections::BTreeMap<String, usize>,
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrthoClass {
    pub representative: Vec<String>,
    pub tree_edges: Vec<[usize; 2]>,
    pub degree_sequence: Vec<usize>,
    pub representations: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrthoResult {
    pub n: usize,
    pub upper_triangular_count: usize,
    pub tree_class_count: usize,
    pub classes: Vec<OrthoClass>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CanonResult {
    pub canonical: Vec<String>,
    /// `keep` or the reflected column.
    pub origin: String,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyResult {
    pub all_passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(input) = &self.input {
            out += &format!(
                "input {} ({}x{}{}) sha256 {}\n",
                input.path,
                input.rows,
                input.cols,
                if input.transposed { ", transposed" } else { "" },
                input.sha256
            );
        }
        match &self.results {
            Results::Classify(r) => {
                out += &format!("verdict: {}\n", r.verdict);
                if let Some([i, j]) = r.witness {
                    out += &format!("witness: ({i}, {j})\n");
                }
                out += &format!("determinant: {}\n", r.determinant);
                out += &format!("fully indecomposable: {}\n", r.fully_indecomposable);
                if let Some(q) = &r.origin_normal {
                    out += &format!("origin facet normal: ({})\n", q.join(", "));
                }
                if let Some(m) = &r.transposed_inverse {
                    out += "transposed inverse:\n";
                    for row in m {
                        out += &format!("  {}\n", row.join(" "));
                    }
                }
            }
            Results::Decompose(r) => {
                out += &format!("fully indecomposable: {}\n", r.fully_indecomposable);
                out += &format!("block sizes: {:?}\n", r.block_sizes);
                out += "triangular form:\n";
                for row in &r.triangular_form {
                    out += &format!("  {row}\n");
                }
                for c in &r.components {
                    out += &format!(
                        "component: dimension {}, attached at {}, vertices {:?}\n",
                        c.dimension, c.attachment, c.vertices
                    );
                }
                if let Some(m) = &r.block_diagonal {
                    out += &format!("block diagonal form via {}:\n", r.operations.join(", "));
                    for row in m {
                        out += &format!("  {row}\n");
                    }
                }
            }
            Results::Neighbors(r) => {
                for f in &r.facets {
                    out += &format!(
                        "facet {} (opposite {}, {}): {} {} completions other than the opposite vertex {:?}; altitude feet {:?}\n",
                        f.facet,
                        f.opposite,
                        if f.interior { "interior" } else { "in a cube facet" },
                        f.other_completions.len(),
                        r.target,
                        f.other_completions,
                        f.altitude_feet
                    );
                }
            }
            Results::Enumerate(r) => {
                out += &format!(
                    "n = {}, filter {}: {} classes\n",
                    r.n, r.filter, r.class_count
                );
                for (verdict, count) in &r.counts {
                    out += &format!("  {verdict}: {count}\n");
                }
            }
            Results::Ortho(r) => {
                out += &format!(
                    "n = {}: {} upper triangular representations, {} classes\n",
                    r.n, r.upper_triangular_count, r.tree_class_count
                );
                for c in &r.classes {
                    out += &format!(
                        "  degrees {:?}, {} representations, e.g. {}\n",
                        c.degree_sequence,
                        c.representations,
                        c.representative.join(" ")
                    );
                }
            }
            Results::Canon(r) => {
                out += &format!("origin: {}\n", r.origin);
                for row in &r.canonical {
                    out += &format!("{row}\n");
                }
            }
            Results::VerifyPaper(r) => {
                for c in &r.checks {
                    out += &format!(
                        "{} {}: {}\n",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
                out += &format!(
                    "{}\n",
                    if r.all_passed {
                        "all checks passed"
                    } else {
                        "some checks failed"
                    }
                );
            }
        }
        out
    }
}
