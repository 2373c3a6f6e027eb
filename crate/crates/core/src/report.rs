//! Run reports: a line-oriented `key=value` machine format and a human
//! format. Only the human format shows elapsed time, so machine reports of
//! identical runs are byte-identical.

use std::fmt::Write as _;
use std::time::Duration;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub elapsed: Duration,
    pub status: i32,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn result(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.results.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.results
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// `command=...`, `input.<key>=...`, result lines, then `status=...`.
    /// Newlines inside values are escaped as `\n`.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command={}", escape(&self.command));
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input.{k}={}", escape(v));
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "{k}={}", escape(v));
        }
        let _ = writeln!(out, "status={}", self.status);
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        let width = self.results.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        let _ = writeln!(
            out,
            "  ({:.3} s, exit {})",
            self.elapsed.as_secs_f64(),
            self.status
        );
        out
    }
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\n', "\\n")
}

/// Parses the machine format back into key/value pairs.
pub fn parse_machine(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.replace("\\n", "\n").replace("\\\\", "\\")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_format_is_stable() {
        let mut r = RunReport::new("dims");
        r.input("n_max", 3).result("d.3", 3).result("note", "a\nb");
        r.elapsed = Duration::from_millis(12);
        let text = r.machine();
        assert_eq!(text, "command=dims\ninput.n_max=3\nd.3=3\nnote=a\\nb\nstatus=0\n");
        r.elapsed = Duration::from_secs(5);
        assert_eq!(r.machine(), text);
        let parsed = parse_machine(&text);
        assert!(parsed.contains(&("note".to_string(), "a\nb".to_string())));
        assert!(r.human().contains("5.000 s"));
        assert_eq!(r.get("d.3"), Some("3"));
    }
}
