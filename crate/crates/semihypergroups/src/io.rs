//! Serialization of every artifact the toolkit reads or writes.
//!
//! Exact values travel as `"p/q"` strings (plain `"p"` for integers), never
//! as floats; floats appear only in analysis-report residual fields. Indices
//! are 1-based in all file formats and reports, matching the `a[i][j](k)`
//! notation, and 0-based everywhere in memory. Writers emit pretty-printed
//! JSON with a fixed key order and a trailing newline, so identical inputs
//! produce byte-identical files.
//!
//! The stream format is plain text: a first line `n=<int>`, then
//! whitespace-separated 1-based event indices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{ConvolutionCube, CubeError, Measure};
use crate::derive::DerivationResult;
use crate::group::{CayleyTable, GroupError};
use crate::rational::{parse_rational, Rational};
use crate::recover::{RecoverError, RecoveryResult};
use crate::stream::{AnalysisReport, EstimatedCube, EventStream, StreamError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {text:?}")]
    BadRational { text: String },
    #[error("negative rational {text:?} not allowed here")]
    NegativeRational { text: String },
    #[error("index {value} out of range 1..={n}")]
    BadIndex { value: usize, n: usize },
    #[error("invalid stream file: {0}")]
    BadStreamFile(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Stream(#[from] StreamError),
}

fn rational_str(x: &Rational) -> String {
    x.to_string()
}

fn rational_from_str(s: &str) -> Result<Rational, IoError> {
    parse_rational(s).map_err(|_| IoError::BadRational {
        text: s.to_string(),
    })
}

fn finish(value: &impl Serialize) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
struct CubeDto {
    n: usize,
    coeffs: Vec<Vec<Vec<String>>>,
}

pub fn cube_to_json(cube: &ConvolutionCube) -> String {
    let n = cube.n();
    let coeffs = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| rational_str(cube.coeff(i, j, k))).collect())
                .collect()
        })
        .collect();
    finish(&CubeDto { n, coeffs })
}

pub fn cube_from_json(text: &str) -> Result<ConvolutionCube, IoError> {
    let dto: CubeDto = serde_json::from_str(text)?;
    let mut coeffs = Vec::with_capacity(dto.coeffs.len());
    for plane in &dto.coeffs {
        let mut cols = Vec::with_capacity(plane.len());
        for col in plane {
            let mut parsed = Vec::with_capacity(col.len());
            for s in col {
                parsed.push(rational_from_str(s)?);
            }
            cols.push(parsed);
        }
        coeffs.push(cols);
    }
    Ok(ConvolutionCube::new(dto.n, coeffs)?)
}

#[derive(Serialize, Deserialize)]
struct MeasureDto {
    weights: Vec<String>,
}

pub fn measure_to_json(m: &Measure) -> String {
    finish(&MeasureDto {
        weights: m.weights().iter().map(rational_str).collect(),
    })
}

pub fn measure_from_json(text: &str) -> Result<Measure, IoError> {
    let dto: MeasureDto = serde_json::from_str(text)?;
    let weights = dto
        .weights
        .iter()
        .map(|s| rational_from_str(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Measure::new(weights)?)
}

#[derive(Serialize, Deserialize)]
struct GroupDto {
    n: usize,
    product: Vec<Vec<usize>>,
}

pub fn group_to_json(g: &CayleyTable) -> String {
    let n = g.n();
    let product = (0..n)
        .map(|i| (0..n).map(|j| g.mul(i, j) + 1).collect())
        .collect();
    finish(&GroupDto { n, product })
}

pub fn group_from_json(text: &str) -> Result<CayleyTable, IoError> {
    let dto: GroupDto = serde_json::from_str(text)?;
    let n = dto.n;
    let mut flat = Vec::with_capacity(n * n);
    for row in &dto.product {
        for &value in row {
            if value == 0 || value > n {
                return Err(IoError::BadIndex { value, n });
            }
            flat.push(value - 1);
        }
    }
    Ok(CayleyTable::new(n, flat)?)
}

#[derive(Serialize)]
struct ViolationDto {
    i: usize,
    j: usize,
    row: usize,
    col: usize,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct ConditionADto {
    distinct_left_rows: usize,
    distinct_right_rows: usize,
    left_ranks: Vec<usize>,
    right_ranks: Vec<usize>,
    holds: bool,
}

#[derive(Serialize)]
struct ValueCountDto {
    value: String,
    count: usize,
}

#[derive(Serialize)]
struct StructureDto {
    distinct_values: Vec<ValueCountDto>,
    values_sum_to_one: bool,
    row_multisets_uniform: bool,
    column_multisets_uniform: bool,
    diagonals_constant: bool,
    n_value_profile: bool,
}

#[derive(Serialize)]
struct CheckReportDto {
    n: usize,
    associative: bool,
    violations: Vec<ViolationDto>,
    condition_a: ConditionADto,
    structure: StructureDto,
}

/// Runs all three exact checks on a cube and serializes the combined report.
pub fn check_report_json(cube: &ConvolutionCube) -> String {
    let violations = cube.check_associativity();
    let condition_a = cube.check_condition_a();
    let structure = cube.structure_report();
    finish(&CheckReportDto {
        n: cube.n(),
        associative: violations.is_empty(),
        violations: violations
            .iter()
            .map(|v| ViolationDto {
                i: v.i + 1,
                j: v.j + 1,
                row: v.row + 1,
                col: v.col + 1,
                lhs: rational_str(&v.lhs),
                rhs: rational_str(&v.rhs),
            })
            .collect(),
        condition_a: ConditionADto {
            distinct_left_rows: condition_a.distinct_left_rows,
            distinct_right_rows: condition_a.distinct_right_rows,
            left_ranks: condition_a.left_ranks.clone(),
            right_ranks: condition_a.right_ranks.clone(),
            holds: condition_a.holds,
        },
        structure: StructureDto {
            distinct_values: structure
                .distinct_values
                .iter()
                .map(|(v, c)| ValueCountDto {
                    value: rational_str(v),
                    count: *c,
                })
                .collect(),
            values_sum_to_one: structure.values_sum_to_one,
            row_multisets_uniform: structure.row_multisets_uniform,
            column_multisets_uniform: structure.column_multisets_uniform,
            diagonals_constant: structure.diagonals_constant,
            n_value_profile: structure.n_value_profile,
        },
    })
}

#[derive(Serialize)]
struct DerivationReportDto {
    n: usize,
    degenerate: bool,
    base_matrix: Vec<Vec<String>>,
}

/// The degenerate flag plus the base matrix `M`, row by row.
pub fn derivation_report_json(result: &DerivationResult) -> String {
    let m = result.base_matrix.entries();
    finish(&DerivationReportDto {
        n: m.rows(),
        degenerate: result.degenerate,
        base_matrix: (0..m.rows())
            .map(|r| m.row(r).iter().map(rational_str).collect())
            .collect(),
    })
}

#[derive(Serialize)]
struct RecoveryDto {
    derived: bool,
    method: Option<String>,
    group: Option<GroupDto>,
    measure: Option<Vec<String>>,
    identity: Option<usize>,
    diagnostics: String,
}

/// Serializes either a certified recovery or the reason there is none;
/// `derived` mirrors success. The identity index is 1-based.
pub fn recovery_to_json(outcome: &Result<RecoveryResult, RecoverError>) -> String {
    let dto = match outcome {
        Ok(r) => RecoveryDto {
            derived: true,
            method: Some(r.method.to_string()),
            group: Some(GroupDto {
                n: r.group.n(),
                product: (0..r.group.n())
                    .map(|i| (0..r.group.n()).map(|j| r.group.mul(i, j) + 1).collect())
                    .collect(),
            }),
            measure: Some(r.measure.weights().iter().map(rational_str).collect()),
            identity: Some(r.identity_index + 1),
            diagnostics: r.diagnostics.clone(),
        },
        Err(e) => RecoveryDto {
            derived: false,
            method: None,
            group: None,
            measure: None,
            identity: None,
            diagnostics: e.to_string(),
        },
    };
    finish(&dto)
}

#[derive(Serialize)]
struct EstimatedCubeDto {
    n: usize,
    counts: Vec<Vec<Vec<u64>>>,
    pair_support: Vec<Vec<bool>>,
    cube: CubeDto,
}

pub fn estimated_to_json(est: &EstimatedCube) -> String {
    let n = est.n();
    finish(&EstimatedCubeDto {
        n,
        counts: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| est.count(i, j, k)).collect())
                    .collect()
            })
            .collect(),
        pair_support: (0..n)
            .map(|i| (0..n).map(|j| est.pair_supported(i, j)).collect())
            .collect(),
        cube: CubeDto {
            n,
            coeffs: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|k| rational_str(est.cube().coeff(i, j, k)))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        },
    })
}

#[derive(Serialize)]
struct ToleranceConditionADto {
    tolerance: f64,
    distinct_left_rows: usize,
    distinct_right_rows: usize,
    left_ranks: Vec<usize>,
    right_ranks: Vec<usize>,
    min_row_gap: Option<f64>,
    holds: bool,
}

#[derive(Serialize)]
struct AnalysisReportDto {
    n: usize,
    stream_length: usize,
    smoothing: String,
    assoc_tol: f64,
    denominator_bound: u64,
    associativity_residual: f64,
    associativity_within_tol: bool,
    condition_a: ToleranceConditionADto,
    recovery: Option<serde_json::Value>,
    recovery_error: Option<String>,
}

pub fn analysis_to_json(report: &AnalysisReport) -> String {
    let ca = &report.condition_a;
    let recovery = report.recovery.as_ref().map(|r| {
        serde_json::from_str(&recovery_to_json(&Ok(r.clone())))
            .expect("recovery JSON round-trips")
    });
    finish(&AnalysisReportDto {
        n: report.n,
        stream_length: report.stream_length,
        smoothing: rational_str(&report.smoothing),
        assoc_tol: report.assoc_tol,
        denominator_bound: report.denominator_bound,
        associativity_residual: report.associativity_residual,
        associativity_within_tol: report.associativity_within_tol,
        condition_a: ToleranceConditionADto {
            tolerance: ca.tolerance,
            distinct_left_rows: ca.distinct_left_rows,
            distinct_right_rows: ca.distinct_right_rows,
            left_ranks: ca.left_ranks.clone(),
            right_ranks: ca.right_ranks.clone(),
            min_row_gap: ca.min_row_gap,
            holds: ca.holds,
        },
        recovery,
        recovery_error: report.recovery_error.clone(),
    })
}

/// First line `n=<int>`, then the events as 1-based indices, twenty per line.
pub fn stream_to_text(stream: &EventStream) -> String {
    let mut out = format!("n={}\n", stream.alphabet_size());
    for chunk in stream.events().chunks(20) {
        let line: Vec<String> = chunk.iter().map(|&e| (e + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn stream_from_text(text: &str) -> Result<EventStream, IoError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| IoError::BadStreamFile("empty file".to_string()))?
        .trim();
    let n: usize = header
        .strip_prefix("n=")
        .ok_or_else(|| IoError::BadStreamFile(format!("first line must be n=<int>, got {header:?}")))?
        .trim()
        .parse()
        .map_err(|_| IoError::BadStreamFile(format!("first line must be n=<int>, got {header:?}")))?;
    let mut events = Vec::new();
    for token in lines.flat_map(str::split_whitespace) {
        let value: usize = token
            .parse()
            .map_err(|_| IoError::BadStreamFile(format!("bad event index {token:?}")))?;
        if value == 0 || value > n {
            return Err(IoError::BadIndex { value, n });
        }
        events.push(value - 1);
    }
    Ok(EventStream::new(n, events, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::from_group;
    use crate::group::cyclic;
    use crate::rational::rat;
    use crate::recover::recover_group;
    use crate::stream::{analyze_stream, estimate_cube, simulate};

    fn z2_cube() -> ConvolutionCube {
        let m = Measure::new(vec![rat(2, 3), rat(1, 3)]).unwrap();
        from_group(&cyclic(2), &m).unwrap().cube
    }

    #[test]
    fn cube_json_round_trip() {
        let cube = z2_cube();
        let text = cube_to_json(&cube);
        assert!(text.contains("\"2/3\""));
        assert!(text.ends_with('\n'));
        let back = cube_from_json(&text).unwrap();
        assert_eq!(back, cube);
        // writer is deterministic
        assert_eq!(cube_to_json(&back), text);
    }

    #[test]
    fn invalid_cube_json_is_rejected() {
        assert!(matches!(
            cube_from_json("{\"n\": 2}"),
            Err(IoError::Json(_))
        ));
        let text = cube_to_json(&z2_cube()).replace("1/3", "1/0");
        assert!(matches!(
            cube_from_json(&text),
            Err(IoError::BadRational { .. })
        ));
        let text = cube_to_json(&z2_cube()).replace("\"1/3\"", "\"1/2\"");
        assert!(matches!(cube_from_json(&text), Err(IoError::Cube(_))));
    }

    #[test]
    fn measure_json_round_trip() {
        let m = Measure::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        let text = measure_to_json(&m);
        assert_eq!(measure_from_json(&text).unwrap(), m);
        assert!(measure_from_json("{\"weights\": [\"1/2\", \"1/3\"]}").is_err());
    }

    #[test]
    fn group_json_uses_one_based_indices() {
        let g = cyclic(3);
        let text = group_to_json(&g);
        let dto: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(dto["product"][0][0], 1);
        assert_eq!(dto["product"][1][2], 1);
        let back = group_from_json(&text).unwrap();
        assert_eq!(back, g);
        let bad = text.replace(": 3", ": 9");
        assert!(group_from_json(&bad).is_err());
    }

    #[test]
    fn check_report_shape() {
        let text = check_report_json(&z2_cube());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["associative"], true);
        assert_eq!(v["violations"].as_array().unwrap().len(), 0);
        assert_eq!(v["condition_a"]["holds"], true);
        assert_eq!(v["structure"]["n_value_profile"], true);
        assert_eq!(v["structure"]["distinct_values"][0]["value"], "1/3");
    }

    #[test]
    fn recovery_json_both_outcomes() {
        let outcome = recover_group(&z2_cube());
        let text = recovery_to_json(&outcome);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["derived"], true);
        assert_eq!(v["method"], "slice");
        assert_eq!(v["identity"], 1);
        assert_eq!(v["measure"][0], "2/3");
        assert_eq!(v["group"]["product"][0][0], 1);

        let uniform = ConvolutionCube::from_fn(2, |_, _, _| rat(1, 2)).unwrap();
        let text = recovery_to_json(&recover_group(&uniform));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["derived"], false);
        assert_eq!(v["group"], serde_json::Value::Null);
        assert!(v["diagnostics"].as_str().unwrap().contains("singular"));
    }

    #[test]
    fn stream_text_round_trip() {
        let s = simulate(&z2_cube(), (0, 1), 50, 9).unwrap();
        let text = stream_to_text(&s);
        assert!(text.starts_with("n=2\n"));
        let back = stream_from_text(&text).unwrap();
        assert_eq!(back.events(), s.events());
        assert_eq!(back.seed(), None); // the file format does not carry seeds

        let parsed = stream_from_text("n=2\n1 2 2 1\n").unwrap();
        assert_eq!(parsed.events(), &[0, 1, 1, 0]);
        assert!(stream_from_text("").is_err());
        assert!(stream_from_text("m=2\n1 2\n").is_err());
        assert!(stream_from_text("n=2\n1 3\n").is_err());
        assert!(stream_from_text("n=2\n0 1\n").is_err());
    }

    #[test]
    fn estimated_and_analysis_json_shapes() {
        let s = simulate(&z2_cube(), (0, 0), 400, 3).unwrap();
        let est = estimate_cube(&s, &Rational::from_integer(0.into())).unwrap();
        let text = estimated_to_json(&est);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], 2);
        assert!(v["counts"][0][0][0].as_u64().unwrap() > 0);
        assert_eq!(v["pair_support"][0][0], true);
        assert_eq!(v["cube"]["n"], 2);

        let report = analyze_stream(&s, &Rational::from_integer(0.into()), 0.1, 3).unwrap();
        let text = analysis_to_json(&report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["stream_length"], 400);
        assert_eq!(v["smoothing"], "0");
        assert_eq!(v["denominator_bound"], 3);
        assert!(v["associativity_residual"].is_number());
        assert_eq!(v["condition_a"]["tolerance"], 0.1);
        // this short stream still snaps cleanly onto the generating cube
        assert_eq!(v["recovery"]["derived"], true);
    }
}
