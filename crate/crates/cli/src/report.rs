use serde_json::{json, Map as JsonMap, Value};

/// JSON report: `{command, params, checks: [{name, pass, detail}], exit}`.
pub struct Report {
    command: String,
    params: JsonMap<String, Value>,
    checks: Vec<Value>,
    failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            params: JsonMap::new(),
            checks: Vec::new(),
            failed: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.failed |= !pass;
        self.checks.push(json!({
            "name": name,
            "pass": pass,
            "detail": detail.into(),
        }));
        self
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }

    /// Prints the report with the given exit code and returns it.
    pub fn emit(&self, exit: u8) -> std::io::Result<u8> {
        let v = json!({
            "command": self.command,
            "params": Value::Object(self.params.clone()),
            "checks": self.checks,
            "exit": exit,
        });
        crate::emit(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n"))?;
        Ok(exit)
    }
}
