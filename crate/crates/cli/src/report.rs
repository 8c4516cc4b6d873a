use serde::{Deserialize, Serialize};

/// Machine-readable command report. Field order is the serialization
/// order; entries are emitted in declaration order so identical
/// invocations produce byte-identical JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<NamedValue>,
    pub outputs: Vec<NamedValue>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Vec::new(), outputs: Vec::new(), checks: Vec::new() }
    }

    pub fn input(&mut self, name: &str, value: impl Into<String>) {
        self.inputs.push(NamedValue { name: name.into(), value: value.into() });
    }

    pub fn output(&mut self, name: &str, value: impl Into<String>) {
        self.outputs.push(NamedValue { name: name.into(), value: value.into() });
    }

    pub fn check(&mut self, name: &str, ok: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: witness.into(),
        });
    }

    pub fn skip(&mut self, name: &str, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, witness: witness.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
