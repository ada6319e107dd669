//! Machine-readable run certificates: one check per exact claim, emitted as
//! flat JSON or as TSV rows for spreadsheet diffing. All values are exact
//! integers or field-element strings; no floats anywhere.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    /// Where the expected value comes from: "formula" for closed-form
    /// counts, "identity" for exact algebraic laws, "construction" for
    /// values pinned by an explicit build.
    pub source: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub command: String,
    pub q: u32,
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Wall-clock duration; excluded from rendered output so that repeated
    /// runs with the same (config, seed) are byte-identical.
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl Certificate {
    pub fn new(command: &str, q: u32, seed: u64, trials: u64) -> Certificate {
        Certificate {
            command: command.to_string(),
            q,
            seed,
            trials,
            checks: vec![],
            pass: true,
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, name: &str, expected: impl ToString, computed: impl ToString, source: &str) {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        self.pass &= pass;
        self.checks.push(Check {
            name: name.to_string(),
            expected,
            computed,
            source: source.to_string(),
            pass,
        });
    }

    pub fn merge(&mut self, other: Certificate) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Tsv => {
                let mut out = String::from("command\tq\tcheck\texpected\tcomputed\tsource\tpass\n");
                for c in &self.checks {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                        self.command, self.q, c.name, c.expected, c.computed, c.source, c.pass
                    ));
                }
                out.push_str(&format!(
                    "{}\t{}\toverall\t\t\t\t{}\n",
                    self.command, self.q, self.pass
                ));
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_checks() {
        let mut cert = Certificate::new("counts", 2, 0, 0);
        cert.push("points", 45, 45, "formula");
        assert!(cert.pass);
        cert.push("lines", 27, 28, "formula");
        assert!(!cert.pass);
        assert_eq!(cert.checks.len(), 2);
    }

    #[test]
    fn renders_both_formats() {
        let mut cert = Certificate::new("counts", 2, 0, 0);
        cert.push("points", 45, 45, "formula");
        let json = cert.render(Format::Json);
        assert!(json.contains("\"pass\": true"));
        let tsv = cert.render(Format::Tsv);
        assert!(tsv.lines().count() == 3);
        assert!(tsv.contains("counts\t2\tpoints\t45\t45\tformula\ttrue"));
    }

    #[test]
    fn merge_propagates_failure() {
        let mut a = Certificate::new("all", 2, 0, 0);
        a.push("x", 1, 1, "identity");
        let mut b = Certificate::new("orbit", 2, 0, 0);
        b.push("y", 2, 3, "formula");
        a.merge(b);
        assert!(!a.pass);
        assert_eq!(a.checks.len(), 2);
    }
}
