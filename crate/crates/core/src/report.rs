//! Serializable per-prime report and its markdown rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    /// Exponent `j` of the first character `ω^j` at which the check failed.
    pub character: Option<usize>,
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemarkOutcome {
    Holds,
    Violated,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkEntry {
    pub character: usize,
    pub hom_dim: usize,
    pub pic_dim: usize,
    pub outcome: RemarkOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub vacuous: bool,
    pub characters: Vec<RemarkEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarlitzChecks {
    pub compositions: usize,
    pub composition_ok: bool,
    pub eisenstein: bool,
    pub exp_order: u64,
    pub exp_ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Oracles {
    pub genus: usize,
    pub zeta_coeffs: Vec<String>,
    pub class_number: String,
    pub cl0_order: String,
    pub pic_invariants: Vec<String>,
    pub unit_rank: usize,
    pub factor_base_bound: usize,
    pub factor_base_size: usize,
    pub witnesses: usize,
    pub cartier_agreement: usize,
    pub probes: usize,
    pub probe_fixed_vectors: usize,
    pub carlitz: Option<CarlitzChecks>,
    /// SHA-256 over the canonical JSON of the other oracle fields.
    pub checksum: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiegelReport {
    pub q: u64,
    pub p_poly: String,
    pub d: usize,
    pub seed: u64,
    pub notes: Vec<String>,
    /// Eigenspace dimensions indexed by the exponent `j` of `ω^j`.
    pub dims: BTreeMap<String, Vec<usize>>,
    pub verdicts: Vec<Verdict>,
    pub remark: RemarkReport,
    pub oracles: Oracles,
    /// Deterministic work counters.
    pub timings: BTreeMap<String, u64>,
    pub status: Status,
    pub first_failure: Option<Verdict>,
}

pub const NOTES: [&str; 3] = [
    "hom_h_lambda is operational: it is computed as the kernel of theta",
    "A/p acts on Omega_R/q^(q^d) through tau(a) = lift(a)^(q^d), the Teichmuller scalar on each coefficient",
    "characters are exponents j of omega; the remark is read with H(R) in place of H(R_P)",
];

impl SpiegelReport {
    pub fn new(q: u64, p_poly: String, d: usize, seed: u64) -> Self {
        SpiegelReport {
            q,
            p_poly,
            d,
            seed,
            notes: NOTES.iter().map(|s| s.to_string()).collect(),
            dims: BTreeMap::new(),
            verdicts: Vec::new(),
            remark: RemarkReport::default(),
            oracles: Oracles::default(),
            timings: BTreeMap::new(),
            status: Status::Pass,
            first_failure: None,
        }
    }

    /// Sets the status and the oracle checksum.
    pub fn finish(&mut self) {
        self.first_failure = self.verdicts.iter().find(|v| !v.pass).cloned();
        self.status = if self.first_failure.is_some() { Status::Failed } else { Status::Pass };
        self.oracles.checksum.clear();
        let canon = serde_json::to_vec(&self.oracles).expect("oracles serialize");
        self.oracles.checksum = format!("{:x}", Sha256::digest(&canon));
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# q = {}, p = {} (d = {})\n", self.q, self.p_poly, self.d);
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Failed => "FAILED",
        };
        let _ = writeln!(s, "Status: **{status}**, seed {}\n", self.seed);
        if let Some(width) = self.dims.values().map(Vec::len).max() {
            let _ = write!(s, "| module |");
            for j in 0..width {
                let _ = write!(s, " ω^{j} |");
            }
            let _ = write!(s, "\n|---|");
            for _ in 0..width {
                let _ = write!(s, "---|");
            }
            s.push('\n');
            for (name, dims) in &self.dims {
                let _ = write!(s, "| {name} |");
                for d in dims {
                    let _ = write!(s, " {d} |");
                }
                s.push('\n');
            }
            s.push('\n');
        }
        let _ = writeln!(s, "| check | result |\n|---|---|");
        for v in &self.verdicts {
            let res = match (v.pass, v.character) {
                (true, _) => "pass".to_string(),
                (false, Some(j)) => format!("FAIL at ω^{j}"),
                (false, None) => "FAIL".to_string(),
            };
            let _ = writeln!(s, "| {} | {res} |", v.name);
        }
        s.push('\n');
        if self.remark.vacuous {
            let _ = writeln!(s, "Remark check: vacuous.\n");
        } else {
            for e in &self.remark.characters {
                let _ = writeln!(s, "- remark at ω^{}: hom {}, pic {}, {:?}", e.character, e.hom_dim, e.pic_dim, e.outcome);
            }
            s.push('\n');
        }
        let o = &self.oracles;
        let _ = writeln!(
            s,
            "Genus {}, P(1) = {}, |Cl^0| = {}, Pic(R) = {:?}, unit rank {}.\n",
            o.genus, o.class_number, o.cl0_order, o.pic_invariants, o.unit_rank
        );
        for n in &self.notes {
            let _ = writeln!(s, "- {n}");
        }
        s
    }
}
