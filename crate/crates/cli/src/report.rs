//! Machine-readable run reports.

use serde::Serialize;

/// Everything one solver run reports. Serialized as JSON with `--json`;
/// the plain-text output prints the same fields line by line.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: String,
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
    pub wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelStats {
    pub rules_applied: usize,
    pub decided: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decided_by: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_edges: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundEntry>,
}

/// One lower bound with its gap to the unstable-edge budget.
#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
}

impl RunReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ANSWER {}\n", self.answer));
        if let Some(opt) = self.optimum {
            out.push_str(&format!("OPTIMUM {opt}\n"));
        }
        if let Some(path) = &self.witness_path {
            out.push_str(&format!("WITNESS {path}\n"));
        }
        if let Some(kernel) = &self.kernel {
            out.push_str(&format!(
                "KERNEL rules={} decided={}",
                kernel.rules_applied, kernel.decided
            ));
            if let Some(rule) = &kernel.decided_by {
                out.push_str(&format!(" by={rule}"));
            }
            if let (Some(n), Some(m)) = (kernel.reduced_vertices, kernel.reduced_edges) {
                out.push_str(&format!(" vertices={n} edges={m}"));
            }
            out.push('\n');
        }
        if let Some(bounds) = &self.bounds {
            for entry in &bounds.entries {
                out.push_str(&format!("BOUND {} {}", entry.name, entry.value));
                if let Some(gap) = &entry.gap {
                    out.push_str(&format!(" gap={gap}"));
                }
                out.push('\n');
            }
        }
        out.push_str(&format!("TIME_MS {}\n", self.wall_ms));
        out
    }
}
