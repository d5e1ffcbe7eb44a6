//! File formats: truth tables (JSON or CSV), noise models (JSON) and reports
//! (JSON, markdown or a short text summary).
//!
//! Truth-table JSON:
//! `{"basis":"Z","rows":[{"input":"0z0z","probs":{"0z0z":0.898,...}},...]}`.
//! CSV: header `input,<out1>,...,<outd>` and one row per input. Tables whose
//! entries are all integers are read as counts and normalized per row.
//! Floats are written in shortest round-trip form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::analysis::{DerivedOperation, FidelityReport, TruthTable};
use crate::channel::{CountTable, NoiseVariant, NoisyGateModel};
use crate::error::{Error, Result};
use crate::gatelib::{basis_family, cnot, mask_symbol, preserved_errors, BasisKind};
use crate::qmath::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
    /// A few summary lines for terminals.
    Text,
}

/// Serializes `(key, value)` pairs as a JSON object in the given order.
struct Ordered<'a, V: Serialize>(&'a [(String, V)]);

impl<V: Serialize> Serialize for Ordered<'_, V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TableRowOut<'a, V: Serialize> {
    input: &'a str,
    probs: Ordered<'a, V>,
}

#[derive(Serialize)]
struct TableOut<'a, V: Serialize> {
    basis: &'a str,
    rows: Vec<TableRowOut<'a, V>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableIn {
    basis: String,
    rows: Vec<TableRowIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRowIn {
    input: String,
    probs: serde_json::Map<String, Value>,
}

enum Entry {
    Count(u64),
    Prob(f64),
}

fn parse_entry(text: &str) -> Result<Entry> {
    let text = text.trim();
    if let Ok(n) = text.parse::<u64>() {
        return Ok(Entry::Count(n));
    }
    let v: f64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("entry {text:?} is not a number")))?;
    entry_from_f64(v)
}

fn entry_from_f64(v: f64) -> Result<Entry> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidTable(format!(
            "entry {v} is not a nonnegative finite number"
        )));
    }
    Ok(Entry::Prob(v))
}

fn entry_from_json(v: &Value) -> Result<Entry> {
    match v {
        Value::Number(n) if n.is_u64() => Ok(Entry::Count(n.as_u64().unwrap())),
        Value::Number(n) if n.is_i64() => Err(Error::InvalidTable(format!("negative entry {n}"))),
        Value::Number(n) => entry_from_f64(n.as_f64().unwrap_or(f64::NAN)),
        other => Err(Error::Parse(format!("entry {other} is not a number"))),
    }
}

fn position(labels: &[String], label: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::InvalidTable(format!("unknown {what} label {label:?}")))
}

/// Assembles a table from labelled entries, whatever the source format.
fn assemble(kind: BasisKind, rows: Vec<(String, Vec<(String, Entry)>)>) -> Result<TruthTable> {
    let inputs = kind.member_labels();
    let outputs = kind.output_kind().member_labels();
    let d = inputs.len();
    if rows.len() != d {
        return Err(Error::InvalidTable(format!(
            "expected {d} rows, found {}",
            rows.len()
        )));
    }
    let mut grid: Vec<Option<Vec<Entry>>> = (0..d).map(|_| None).collect();
    for (input, entries) in rows {
        let k = position(&inputs, &input, "input")?;
        if grid[k].is_some() {
            return Err(Error::InvalidTable(format!("input {input:?} listed twice")));
        }
        if entries.len() != d {
            return Err(Error::InvalidTable(format!(
                "row {input:?} has {} entries, expected {d}",
                entries.len()
            )));
        }
        let mut row: Vec<Option<Entry>> = (0..d).map(|_| None).collect();
        for (output, e) in entries {
            let j = position(&outputs, &output, "output")?;
            if row[j].replace(e).is_some() {
                return Err(Error::InvalidTable(format!(
                    "output {output:?} listed twice"
                )));
            }
        }
        grid[k] = Some(
            row.into_iter()
                .map(|e| e.expect("all outputs present"))
                .collect(),
        );
    }
    let grid: Vec<Vec<Entry>> = grid
        .into_iter()
        .map(|r| r.expect("all inputs present"))
        .collect();
    let perm = basis_family(kind).ideal_permutation;

    let all_counts = grid.iter().flatten().all(|e| matches!(e, Entry::Count(_)));
    if all_counts {
        let counts: Vec<Vec<u64>> = grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Count(n) => *n,
                        Entry::Prob(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        TruthTable::from_counts(kind, &counts, perm)
    } else {
        let probs = grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Count(n) => *n as f64,
                        Entry::Prob(p) => *p,
                    })
                    .collect()
            })
            .collect();
        TruthTable::new(kind, probs, perm)
    }
}

fn kind_from_inputs(inputs: &[String]) -> Result<BasisKind> {
    let mut sorted = inputs.to_vec();
    sorted.sort();
    BasisKind::ALL
        .into_iter()
        .find(|k| {
            let mut labels = k.member_labels();
            labels.sort();
            labels == sorted
        })
        .ok_or_else(|| {
            Error::InvalidTable(format!(
                "input labels {inputs:?} do not name a basis family"
            ))
        })
}

pub fn parse_truth_table(bytes: &[u8], format: TableFormat) -> Result<TruthTable> {
    match format {
        TableFormat::Json => {
            let file: TableIn = serde_json::from_slice(bytes)?;
            let kind = BasisKind::from_tag(&file.basis)?;
            let rows = file
                .rows
                .into_iter()
                .map(|row| {
                    let entries = row
                        .probs
                        .iter()
                        .map(|(k, v)| Ok((k.clone(), entry_from_json(v)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((row.input, entries))
                })
                .collect::<Result<Vec<_>>>()?;
            assemble(kind, rows)
        }
        TableFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(true)
                .trim(csv::Trim::All)
                .from_reader(bytes);
            let header = reader
                .headers()
                .map_err(|e| Error::Parse(e.to_string()))?
                .clone();
            if header.get(0) != Some("input") {
                return Err(Error::Parse("CSV header must start with \"input\"".into()));
            }
            let outputs: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
            let mut rows = Vec::new();
            for record in reader.records() {
                let record = record.map_err(|e| Error::Parse(e.to_string()))?;
                let input = record.get(0).unwrap_or_default().to_string();
                let entries = outputs
                    .iter()
                    .zip(record.iter().skip(1))
                    .map(|(o, v)| Ok((o.clone(), parse_entry(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                rows.push((input, entries));
            }
            let inputs: Vec<String> = rows.iter().map(|r| r.0.clone()).collect();
            assemble(kind_from_inputs(&inputs)?, rows)
        }
    }
}

fn emit_grid<V: Serialize + Copy>(
    kind: BasisKind,
    values: &[Vec<V>],
    format: TableFormat,
    fmt: impl Fn(V) -> String,
) -> Vec<u8> {
    let inputs = kind.member_labels();
    let outputs = kind.output_kind().member_labels();
    match format {
        TableFormat::Json => {
            let rows: Vec<Vec<(String, V)>> = values
                .iter()
                .map(|row| outputs.iter().cloned().zip(row.iter().copied()).collect())
                .collect();
            let out = TableOut {
                basis: kind.tag(),
                rows: inputs
                    .iter()
                    .zip(&rows)
                    .map(|(input, row)| TableRowOut {
                        input,
                        probs: Ordered(row),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&out).expect("tables serialize");
            s.push('\n');
            s.into_bytes()
        }
        TableFormat::Csv => {
            let mut s = String::from("input");
            for o in &outputs {
                s.push(',');
                s.push_str(o);
            }
            s.push('\n');
            for (input, row) in inputs.iter().zip(values) {
                s.push_str(input);
                for &v in row {
                    s.push(',');
                    s.push_str(&fmt(v));
                }
                s.push('\n');
            }
            s.into_bytes()
        }
    }
}

pub fn emit_truth_table(table: &TruthTable, format: TableFormat) -> Vec<u8> {
    emit_grid(table.basis(), table.probs(), format, |v: f64| {
        format!("{v:?}")
    })
}

pub fn emit_count_table(table: &CountTable, format: TableFormat) -> Vec<u8> {
    emit_grid(table.basis, &table.counts, format, |v: u64| v.to_string())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    gate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chi_diagonal: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unitary_mixture: Option<Vec<MixtureTerm>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureTerm {
    probability: f64,
    /// Row-major, each entry `[re, im]`.
    matrix: Vec<Vec<[f64; 2]>>,
}

fn gate_by_name(name: &str) -> Result<CMatrix> {
    match name {
        "cnot" => Ok(cnot()),
        "identity" => Ok(CMatrix::identity(4)),
        other => Err(Error::InvalidParameter(format!("unknown gate {other:?}"))),
    }
}

fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("mixture matrix must be square".into()));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    CMatrix::new(n, n, data)
}

pub fn parse_model(bytes: &[u8]) -> Result<NoisyGateModel> {
    let file: ModelFile = serde_json::from_slice(bytes)?;
    let ideal = gate_by_name(&file.gate)?;
    match (file.chi_diagonal, file.unitary_mixture) {
        (Some(weights), None) => {
            let weights = weights
                .into_iter()
                .map(|(label, w)| Ok((label.parse()?, w)))
                .collect::<Result<Vec<_>>>()?;
            NoisyGateModel::chi_diagonal(ideal, weights)
        }
        (None, Some(terms)) => {
            let terms = terms
                .iter()
                .map(|t| Ok((t.probability, matrix_from_pairs(&t.matrix)?)))
                .collect::<Result<Vec<_>>>()?;
            NoisyGateModel::unitary_mixture(ideal, terms)
        }
        _ => Err(Error::Parse(
            "model needs exactly one of \"chi_diagonal\" or \"unitary_mixture\"".into(),
        )),
    }
}

pub fn emit_model(model: &NoisyGateModel) -> Result<Vec<u8>> {
    let gate = ["cnot", "identity"]
        .into_iter()
        .find(|name| {
            gate_by_name(name)
                .map(|g| g.approx_eq(model.ideal_gate(), 1e-12))
                .unwrap_or(false)
        })
        .ok_or_else(|| {
            Error::InvalidParameter("only cnot and identity models can be written".into())
        })?;
    let mut file = ModelFile {
        gate: gate.to_string(),
        chi_diagonal: None,
        unitary_mixture: None,
    };
    match model.variant() {
        NoiseVariant::ChiDiagonal(weights) => {
            file.chi_diagonal = Some(weights.iter().map(|(l, w)| (l.to_string(), *w)).collect());
        }
        NoiseVariant::UnitaryMixture(terms) => {
            file.unitary_mixture = Some(
                terms
                    .iter()
                    .map(|(p, a)| MixtureTerm {
                        probability: *p,
                        matrix: (0..a.rows())
                            .map(|r| {
                                (0..a.cols())
                                    .map(|c| [a[(r, c)].re, a[(r, c)].im])
                                    .collect()
                            })
                            .collect(),
                    })
                    .collect(),
            );
        }
    }
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s.into_bytes())
}

#[derive(Serialize)]
struct ReportJson<'a> {
    f_z: f64,
    f_x: f64,
    f_qp_lo: f64,
    f_qp_lo_unclamped: f64,
    f_qp_hi: f64,
    c_coarse: f64,
    d_coarse: f64,
    f_i_min: f64,
    f_c_min: f64,
    f_d_min: f64,
    c_refined: f64,
    d_refined: f64,
    eta_z: Ordered<'a, f64>,
    eta_x: Ordered<'a, f64>,
    b: f64,
    c_coarse_unclamped: f64,
    d_coarse_unclamped: f64,
    c_refined_unclamped: f64,
    d_refined_unclamped: f64,
    min_fqp_grid: &'a [Vec<f64>],
}

pub fn emit_report(report: &FidelityReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let (eta_z, eta_x) = (report.eta_z.entries(), report.eta_x.entries());
            let json = ReportJson {
                f_z: report.f_z,
                f_x: report.f_x,
                f_qp_lo: report.interval.lo,
                f_qp_lo_unclamped: report.interval.lo_unclamped,
                f_qp_hi: report.interval.hi,
                c_coarse: report.c_coarse(),
                d_coarse: report.d_coarse(),
                f_i_min: report.f_i_min,
                f_c_min: report.f_c_min,
                f_d_min: report.f_d_min,
                c_refined: report.c_refined(),
                d_refined: report.d_refined(),
                eta_z: Ordered(&eta_z),
                eta_x: Ordered(&eta_x),
                b: report.b,
                c_coarse_unclamped: report.c_coarse_raw,
                d_coarse_unclamped: report.d_coarse_raw,
                c_refined_unclamped: report.c_refined_raw,
                d_refined_unclamped: report.d_refined_raw,
                min_fqp_grid: &report.min_fqp_witness,
            };
            let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Markdown => markdown(report).into_bytes(),
        ReportFormat::Text => summary(report).into_bytes(),
    }
}

fn summary(r: &FidelityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "F_Z = {:.3}, F_X = {:.3}", r.f_z, r.f_x);
    let _ = writeln!(s, "F_qp in [{:.3}, {:.3}]", r.interval.lo, r.interval.hi);
    let _ = writeln!(
        s,
        "C >= {:.3}, D >= {:.3} (b = {})",
        r.c_coarse(),
        r.d_coarse(),
        r.b
    );
    let _ = writeln!(
        s,
        "F_I >= {:.3}, F_C >= {:.3}, F_D >= {:.3}",
        r.f_i_min, r.f_c_min, r.f_d_min
    );
    let _ = writeln!(
        s,
        "refined: C >= {:.3}, D >= {:.3}",
        r.c_refined(),
        r.d_refined()
    );
    s
}

fn grid_labels(side: usize) -> Vec<String> {
    (0..side as u32)
        .map(|m| {
            if side == 4 {
                mask_symbol(m).to_string()
            } else {
                format!("{m:b}")
            }
        })
        .collect()
}

fn markdown_truth_table(s: &mut String, title: &str, t: &TruthTable) {
    let inputs = t.basis().member_labels();
    let outputs = t.basis().output_kind().member_labels();
    let _ = writeln!(s, "### {title}\n");
    let _ = write!(s, "| in \\ out |");
    for o in &outputs {
        let _ = write!(s, " ⟨{o}| |");
    }
    let _ = write!(s, "\n|---|");
    for _ in &outputs {
        let _ = write!(s, "---|");
    }
    s.push('\n');
    for (k, input) in inputs.iter().enumerate() {
        let _ = write!(s, "| \\|{input}⟩ |");
        for j in 0..t.dim() {
            if j == t.ideal_permutation()[k] {
                let _ = write!(s, " **{:.3}** |", t.get(k, j));
            } else {
                let _ = write!(s, " {:.3} |", t.get(k, j));
            }
        }
        s.push('\n');
    }
    s.push('\n');
}

fn markdown(r: &FidelityReport) -> String {
    let mut s = String::from("# Controlled-NOT characterization report\n\n## Truth tables\n\n");
    markdown_truth_table(&mut s, "Z basis (controlled-NOT)", &r.z_table);
    markdown_truth_table(&mut s, "X basis (reversed controlled-NOT)", &r.x_table);

    let _ = writeln!(s, "## Fidelities\n");
    let _ = writeln!(s, "- F_Z = {:.3}, F_X = {:.3}", r.f_z, r.f_x);
    let _ = writeln!(
        s,
        "- F_qp in [{:.3}, {:.3}] (unclamped lower bound {:.4})",
        r.interval.lo, r.interval.hi, r.interval.lo_unclamped
    );
    let _ = writeln!(
        s,
        "- C >= {:.3}, D >= {:.3} (witness b = {})\n",
        r.c_coarse(),
        r.d_coarse(),
        r.b
    );

    let _ = writeln!(s, "## Error budget\n");
    let _ = writeln!(s, "| pattern | eta_z | eta_x |\n|---|---|---|");
    for ((name, z), (_, x)) in r.eta_z.entries().into_iter().zip(r.eta_x.entries()) {
        let _ = writeln!(s, "| {name} | {z:.3} | {x:.3} |");
    }
    s.push('\n');

    let side = r.grid.rows().len();
    let labels = grid_labels(side);
    let header = |s: &mut String| {
        let _ = write!(s, "| chi |");
        for l in &labels {
            let _ = write!(s, " *{l} |");
        }
        let _ = write!(s, " sum |\n|---|");
        for _ in 0..=side {
            let _ = write!(s, "---|");
        }
        s.push('\n');
    };
    let footer = |s: &mut String| {
        let _ = write!(s, "| sum |");
        for c in r.grid.cols() {
            let _ = write!(s, " {c:.3} |");
        }
        let total: f64 = r.grid.rows().iter().sum();
        let _ = writeln!(s, " {total:.3} |\n");
    };

    let _ = writeln!(
        s,
        "## Joint error grid\n\nRows are Z flip patterns, columns X flip patterns.\n"
    );
    header(&mut s);
    for (i, row_sum) in r.grid.rows().iter().enumerate() {
        let _ = write!(s, "| {}* |", labels[i]);
        for l in &labels {
            let _ = write!(s, " chi({}{}) |", labels[i], l);
        }
        let _ = writeln!(s, " {row_sum:.3} |");
    }
    footer(&mut s);

    let _ = writeln!(s, "## Grid of minimal process fidelity\n");
    header(&mut s);
    for (i, row) in r.min_fqp_witness.iter().enumerate() {
        let _ = write!(s, "| {}* |", labels[i]);
        for v in row {
            let _ = write!(s, " {v:.3} |");
        }
        let _ = writeln!(s, " {:.3} |", row.iter().sum::<f64>());
    }
    footer(&mut s);

    let _ = writeln!(s, "## Derived operations\n");
    let _ = writeln!(
        s,
        "| operation | preserved errors | minimal fidelity | bound |\n|---|---|---|---|"
    );
    for op in DerivedOperation::ALL {
        let preserved: Vec<String> = preserved_errors(op.output_kind())
            .expect("supported")
            .iter()
            .map(|l| l.to_string())
            .collect();
        let bound = match op {
            DerivedOperation::IdentityZx => String::new(),
            DerivedOperation::Entangler => format!("C >= {:.3}", r.c_refined()),
            DerivedOperation::BellAnalyzer => format!("D >= {:.3}", r.d_refined()),
        };
        let _ = writeln!(
            s,
            "| {} | {} | {:.3} | {} |",
            op.name(),
            preserved.join(", "),
            r.derived_min(op),
            bound
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{classical_fidelity, full_report};
    use crate::channel::{choi_fidelity, truth_table};
    use crate::fixture;

    #[test]
    fn fixture_first_entry() {
        assert_eq!(fixture::measured_z().get(0, 0), 0.898);
    }

    #[test]
    fn identity_permutation_csv() {
        let csv =
            "input,0z0z,0z1z,1z0z,1z1z\n0z0z,1,0,0,0\n0z1z,0,1,0,0\n1z0z,0,0,0,1\n1z1z,0,0,1,0\n";
        let t = parse_truth_table(csv.as_bytes(), TableFormat::Csv).unwrap();
        assert_eq!(t.basis(), BasisKind::ZProduct);
        assert_eq!(classical_fidelity(&t), 1.0);
    }

    #[test]
    fn counts_are_normalized() {
        let csv = "input,0z0z,0z1z,1z0z,1z1z\n\
                   0z0z,898000,31000,61000,11000\n\
                   0z1z,21,885,6,88\n\
                   1z0z,64,27,99,810\n\
                   1z1z,31,96,819,54\n";
        let t = parse_truth_table(csv.as_bytes(), TableFormat::Csv).unwrap();
        let row = [898.0 / 1001.0, 31.0 / 1001.0, 61.0 / 1001.0, 11.0 / 1001.0];
        for (j, p) in row.iter().enumerate() {
            assert!((t.get(0, j) - p).abs() < 1e-12);
        }
        // the fixture row normalized by its printed sum 1.001
        assert!((t.get(0, 0) - 0.898 / 1.001).abs() < 1e-9);
    }

    #[test]
    fn table_parse_errors() {
        let bad_label =
            "input,0z0z,0z1z,1z0z,1z1z\n0z0q,1,0,0,0\n0z1z,0,1,0,0\n1z0z,0,0,0,1\n1z1z,0,0,1,0\n";
        assert!(parse_truth_table(bad_label.as_bytes(), TableFormat::Csv).is_err());
        let negative =
            fixture::MEASURED_Z_JSON.replace("0.031, \"1z0z\": 0.061", "-0.031, \"1z0z\": 0.061");
        assert!(parse_truth_table(negative.as_bytes(), TableFormat::Json).is_err());
        let bad_sum = fixture::MEASURED_Z_JSON.replace("0.898", "0.958");
        assert!(matches!(
            parse_truth_table(bad_sum.as_bytes(), TableFormat::Json),
            Err(Error::InvalidTable(_))
        ));
        let wrong_output =
            fixture::MEASURED_Z_JSON.replacen("\"0z0z\": 0.898", "\"0x0x\": 0.898", 1);
        assert!(parse_truth_table(wrong_output.as_bytes(), TableFormat::Json).is_err());
        assert!(parse_truth_table(b"{not json", TableFormat::Json).is_err());
        assert!(parse_truth_table(b"row,a\n", TableFormat::Csv).is_err());
    }

    #[test]
    fn json_and_csv_agree() {
        let z = fixture::measured_z();
        let csv = emit_truth_table(&z, TableFormat::Csv);
        let back = parse_truth_table(&csv, TableFormat::Csv).unwrap();
        assert_eq!(back, z);
        let json = emit_truth_table(&z, TableFormat::Json);
        assert_eq!(parse_truth_table(&json, TableFormat::Json).unwrap(), z);
    }

    #[test]
    fn bell_tables_round_trip() {
        let model = fixture::min_fidelity_model();
        let t = truth_table(&model, &basis_family(BasisKind::Bell)).unwrap();
        for format in [TableFormat::Json, TableFormat::Csv] {
            let back = parse_truth_table(&emit_truth_table(&t, format), format).unwrap();
            assert_eq!(back.basis(), BasisKind::Bell);
            for k in 0..4 {
                for j in 0..4 {
                    assert!((back.get(k, j) - t.get(k, j)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn model_examples() {
        let ideal = parse_model(br#"{"gate":"cnot","chi_diagonal":{"II":1}}"#).unwrap();
        assert_eq!(choi_fidelity(&ideal), 1.0);
        assert!((choi_fidelity(&fixture::min_fidelity_model()) - 0.720).abs() < 1e-12);

        let non_unitary = br#"{"gate":"cnot","unitary_mixture":[{"probability":1.0,"matrix":
            [[[2,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]}]}"#;
        assert!(matches!(
            parse_model(non_unitary),
            Err(Error::NotUnitary { .. })
        ));
        assert!(parse_model(br#"{"gate":"cnot","chi_diagonal":{"II":0.5}}"#).is_err());
        assert!(parse_model(br#"{"gate":"swap","chi_diagonal":{"II":1}}"#).is_err());
        assert!(parse_model(br#"{"gate":"cnot"}"#).is_err());
        assert!(parse_model(br#"{"gate":"cnot","chi_diagonal":{"II":1},"extra":1}"#).is_err());
    }

    #[test]
    fn model_round_trip() {
        let model = fixture::min_fidelity_model();
        let back = parse_model(&emit_model(&model).unwrap()).unwrap();
        assert!((choi_fidelity(&back) - choi_fidelity(&model)).abs() < 1e-15);
        let mix = NoisyGateModel::unitary_mixture(
            cnot(),
            vec![(0.25, cnot()), (0.75, CMatrix::identity(4))],
        )
        .unwrap();
        assert_eq!(parse_model(&emit_model(&mix).unwrap()).unwrap(), mix);
    }

    #[test]
    fn report_outputs() {
        let (z, x) = fixture::measured();
        let report = full_report(&z, &x, 0.5).unwrap();
        let json: Value =
            serde_json::from_slice(&emit_report(&report, ReportFormat::Json)).unwrap();
        for key in [
            "f_z",
            "f_x",
            "f_qp_lo",
            "f_qp_lo_unclamped",
            "f_qp_hi",
            "c_coarse",
            "d_coarse",
            "f_i_min",
            "f_c_min",
            "f_d_min",
            "c_refined",
            "d_refined",
            "eta_z",
            "eta_x",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert!((json["f_qp_lo"].as_f64().unwrap() - 0.720).abs() < 1e-3);
        assert!((json["eta_x"]["C"].as_f64().unwrap() - 0.071).abs() < 5e-4);

        let md = String::from_utf8(emit_report(&report, ReportFormat::Markdown)).unwrap();
        assert!(md.contains("## Grid of minimal process fidelity"));
        for (label, sum) in [
            ("0*", "0.853"),
            ("C*", "0.052"),
            ("T*", "0.051"),
            ("B*", "0.044"),
        ] {
            let line = md
                .lines()
                .skip_while(|l| !l.starts_with("## Grid of minimal"))
                .find(|l| l.starts_with(&format!("| {label}")))
                .unwrap();
            assert!(line.trim_end().ends_with(&format!("{sum} |")), "{line}");
        }
        assert!(md.contains("**0.898**"));
        assert_eq!(
            emit_report(&report, ReportFormat::Markdown),
            md.into_bytes()
        );
        let text = String::from_utf8(emit_report(&report, ReportFormat::Text)).unwrap();
        assert!(text.contains("F_qp in [0.720, 0.853]"));
    }
}
