//! Report shape shared by the text and JSON outputs.

use serde::Serialize;
use sigma_core::{PermGroup, Witness};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub degree: usize,
    /// Decimal string, since orders routinely overflow 64 bits.
    pub order: String,
    pub primes: Vec<u32>,
}

impl GroupSummary {
    pub fn of(g: &PermGroup) -> Self {
        let order = g.order();
        GroupSummary {
            degree: g.degree(),
            order: order.to_string(),
            primes: order.primes().into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub group: GroupSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub least: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub millis: u64,
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string(self).expect("reports serialize");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        if let Some(least) = &self.least {
            out.push_str(&format!("least partition: {least}\n"));
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("verdict: {v}\n"));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("reason: {w}\n"));
        }
        out
    }
}
