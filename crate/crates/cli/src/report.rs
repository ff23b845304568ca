use serde::Serialize;
use serde_json::{json, Value};
use zslab::group::{GroupSpec, Subspace};
use zslab::ElementSequence;

pub const SCHEMA_ID: &str = "zslab-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Computed and checked exactly.
    Exact,
    /// A one-sided bound; the search or check did not finish.
    Bound,
    Inconclusive,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Bound => "bound",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub value: Value,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub command: String,
    pub spec: Option<GroupSpec>,
    pub parameters: Value,
    pub result: Value,
    pub claims: Vec<Claim>,
    pub nodes_explored: Option<u64>,
    pub timing_ms: Option<f64>,
}

/// What a command hands back to `main`.
pub struct Report {
    pub envelope: Envelope,
    /// Extra human-readable lines printed after the claims.
    pub lines: Vec<String>,
    /// Some search stopped on its budget or an interrupt.
    pub cut_short: bool,
}

impl Report {
    pub fn new(command: &str, spec: Option<GroupSpec>, parameters: Value, result: Value) -> Self {
        Report {
            envelope: Envelope {
                schema: SCHEMA_ID,
                command: command.to_string(),
                spec,
                parameters,
                result,
                claims: Vec::new(),
                nodes_explored: None,
                timing_ms: None,
            },
            lines: Vec::new(),
            cut_short: false,
        }
    }

    pub fn claim(&mut self, name: impl Into<String>, value: impl Into<Value>, status: Status) -> &mut Self {
        self.envelope.claims.push(Claim { name: name.into(), value: value.into(), status });
        self
    }

    pub fn line(&mut self, line: impl Into<String>) -> &mut Self {
        self.lines.push(line.into());
        self
    }

    pub fn render_text(&self) -> String {
        let env = &self.envelope;
        let mut out = String::new();
        match env.spec {
            Some(spec) => out.push_str(&format!("{} over F_{}^{}\n", env.command, spec.p(), spec.d())),
            None => out.push_str(&format!("{}\n", env.command)),
        }
        for c in &env.claims {
            out.push_str(&format!("  {}: {} [{}]\n", c.name, compact(&c.value), c.status.as_str()));
        }
        for l in &self.lines {
            out.push_str(&format!("  {l}\n"));
        }
        if let Some(n) = env.nodes_explored {
            out.push_str(&format!("  nodes explored: {n}\n"));
        }
        if let Some(t) = env.timing_ms {
            out.push_str(&format!("  time: {t:.1} ms\n"));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn coords(spec: GroupSpec, x: usize) -> Value {
    json!(spec.decode(x))
}

/// `[{"coords": [..], "multiplicity": k}, ..]` in index order.
pub fn sequence_json(seq: &ElementSequence) -> Value {
    let spec = seq.spec();
    Value::Array(
        seq.entries()
            .iter()
            .map(|&(x, k)| json!({ "coords": spec.decode(x), "multiplicity": k }))
            .collect(),
    )
}

pub fn subspace_json(h: &Subspace) -> Value {
    json!({ "dim": h.dim(), "basis": h.basis() })
}
