use std::fmt::Write as _;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::afn::AfnKind;
use crate::enhanced::EnhancedReport;
use crate::error::{Error, Result};
use crate::framework::{ArgSet, Framework};
use crate::gr::{GRConfig, GRReport, GRStatus};
use crate::valuation::{Label, Labelling, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "structured" => Ok(OutputFormat::Json),
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidParameter(format!("unknown output format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkSummary {
    pub arguments: usize,
    pub attacks: usize,
}

impl FrameworkSummary {
    pub fn of(fw: &Framework) -> Self {
        FrameworkSummary {
            arguments: fw.len(),
            attacks: fw.attacks().len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub function: String,
    pub change_tolerance: f64,
    pub snap_tolerance: f64,
    pub max_iterations: usize,
}

impl ConfigEcho {
    pub fn new(kind: &AfnKind, cfg: &GRConfig) -> Self {
        ConfigEcho {
            function: kind.to_string(),
            change_tolerance: cfg.change_tolerance,
            snap_tolerance: cfg.snap_tolerance,
            max_iterations: cfg.max_iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnhancedRoundDocument {
    pub seed: IndexMap<String, f64>,
    pub equilibrium: IndexMap<String, f64>,
    pub crisp: Vec<String>,
}

/// Serialized result of a single run. Values are written in shortest
/// round-trip form, so parsing a document back gives identical floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReportDocument {
    pub framework: FrameworkSummary,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
    pub initial: IndexMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_index_k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settled: Option<IndexMap<String, f64>>,
    pub equilibrium: IndexMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_equilibrium: Option<IndexMap<String, f64>>,
    pub extension: Vec<String>,
    pub labelling: IndexMap<String, Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations_run: Option<usize>,
    pub status: GRStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<IndexMap<String, f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<Vec<EnhancedRoundDocument>>,
}

pub fn valuation_map(fw: &Framework, v: &Valuation) -> IndexMap<String, f64> {
    fw.arguments()
        .iter()
        .zip(v.values())
        .map(|(a, &x)| (a.to_string(), x))
        .collect()
}

fn labelling_map(fw: &Framework, l: &Labelling) -> IndexMap<String, Label> {
    fw.arguments()
        .iter()
        .zip(l.labels())
        .map(|(a, &x)| (a.to_string(), x))
        .collect()
}

fn names(fw: &Framework, set: &ArgSet) -> Vec<String> {
    fw.names(set).into_iter().map(String::from).collect()
}

impl RunReportDocument {
    fn base(fw: &Framework, mode: &str, v0: &Valuation, equilibrium: &Valuation, status: GRStatus) -> Self {
        RunReportDocument {
            framework: FrameworkSummary::of(fw),
            mode: mode.to_string(),
            config: None,
            initial: valuation_map(fw, v0),
            stable_index_k: None,
            settled: None,
            equilibrium: valuation_map(fw, equilibrium),
            raw_equilibrium: None,
            extension: names(fw, &equilibrium.in_set()),
            labelling: labelling_map(fw, &equilibrium.to_labelling()),
            iterations_run: None,
            status,
            trajectory: None,
            rounds: None,
        }
    }

    pub fn from_gr(fw: &Framework, v0: &Valuation, r: &GRReport, kind: &AfnKind, cfg: &GRConfig, mode: &str) -> Self {
        let mut doc = Self::base(fw, mode, v0, &r.equilibrium, r.status.clone());
        doc.config = Some(ConfigEcho::new(kind, cfg));
        doc.stable_index_k = Some(r.stable_index_k);
        doc.settled = Some(valuation_map(fw, &r.settled));
        doc.raw_equilibrium = Some(valuation_map(fw, &r.raw_equilibrium));
        doc.iterations_run = Some(r.iterations_run);
        doc.trajectory = r
            .trajectory
            .as_ref()
            .map(|t| t.iter().map(|v| valuation_map(fw, v)).collect());
        doc
    }

    /// Stop at the stable index: `settled` is `V_{k+1}` and the reported
    /// labelling is that of `V_{k+1}`.
    pub fn from_stable(fw: &Framework, v0: &Valuation, k: usize, settled: &Valuation) -> Self {
        let mut doc = Self::base(fw, "stable", v0, settled, GRStatus::Converged);
        doc.stable_index_k = Some(k);
        doc.settled = Some(valuation_map(fw, settled));
        doc
    }

    /// Exact equilibrium from the labelling pipeline.
    pub fn from_labelling(fw: &Framework, v0: &Valuation, l: &Labelling, mode: &str) -> Self {
        Self::base(fw, mode, v0, &l.to_valuation(), GRStatus::Converged)
    }

    pub fn from_enhanced(fw: &Framework, v0: &Valuation, r: &EnhancedReport) -> Self {
        let last = &r.rounds.last().expect("at least one round").equilibrium;
        let mut doc = Self::base(fw, "enhanced", v0, last, GRStatus::Converged);
        doc.extension = names(fw, &r.final_extension);
        doc.rounds = Some(
            r.rounds
                .iter()
                .map(|round| EnhancedRoundDocument {
                    seed: valuation_map(fw, &round.seed),
                    equilibrium: valuation_map(fw, &round.equilibrium),
                    crisp: names(fw, &round.crisp),
                })
                .collect(),
        );
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn status_text(&self) -> String {
        match &self.status {
            GRStatus::Converged => "converged".into(),
            GRStatus::IterationCapHit => "iteration_cap_hit".into(),
            GRStatus::UnresolvedValue(x) => format!("unresolved_value({x})"),
        }
    }

    /// One row per argument: `V0`, `Vk` (when known), `Ve` and the label.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "mode: {}  status: {}", self.mode, self.status_text());
        if let Some(k) = self.stable_index_k {
            let _ = write!(out, "  k: {k}");
        }
        if let Some(n) = self.iterations_run {
            let _ = write!(out, "  iterations: {n}");
        }
        out.push('\n');
        let mut headers = vec!["argument", "V0"];
        if self.settled.is_some() {
            headers.push("Vk");
        }
        headers.extend(["Ve", "label"]);
        let rows: Vec<Vec<String>> = self
            .initial
            .iter()
            .map(|(name, &v0)| {
                let mut row = vec![name.clone(), format_value(v0)];
                if let Some(s) = &self.settled {
                    row.push(format_value(s[name]));
                }
                row.push(format_value(self.equilibrium[name]));
                row.push(self.labelling[name].to_string());
                row
            })
            .collect();
        out.push_str(&render_table(&headers, &rows));
        let _ = writeln!(out, "extension: {{{}}}", self.extension.join(", "));
        out
    }

    /// Trajectory as `iteration,argument,value` rows when recorded,
    /// otherwise one summary row per argument.
    pub fn to_csv(&self) -> String {
        if let Some(t) = &self.trajectory {
            let rows: Vec<Vec<String>> = t
                .iter()
                .enumerate()
                .flat_map(|(i, v)| {
                    v.iter()
                        .map(move |(name, &x)| vec![i.to_string(), name.clone(), format_value(x)])
                })
                .collect();
            return render_csv(&["iteration", "argument", "value"], &rows);
        }
        let rows: Vec<Vec<String>> = self
            .initial
            .iter()
            .map(|(name, &v0)| {
                vec![
                    name.clone(),
                    format_value(v0),
                    self.settled
                        .as_ref()
                        .map(|s| format_value(s[name]))
                        .unwrap_or_default(),
                    format_value(self.equilibrium[name]),
                    self.labelling[name].to_string(),
                ]
            })
            .collect();
        render_csv(&["argument", "initial", "settled", "equilibrium", "label"], &rows)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = self.to_json();
                s.push('\n');
                s
            }
            OutputFormat::Table => self.to_table(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Shortest representation that parses back to the same float.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn render_table<S: AsRef<str>>(headers: &[S], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.as_ref().chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    let header: Vec<&str> = headers.iter().map(|h| h.as_ref()).collect();
    line(&mut out, &header);
    let sep: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(&mut out, &sep.iter().map(String::as_str).collect::<Vec<_>>());
    for row in rows {
        line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv<S: AsRef<str>>(headers: &[S], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let header: Vec<String> = headers.iter().map(|h| csv_cell(h.as_ref())).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
