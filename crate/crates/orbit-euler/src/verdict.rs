use serde::Serialize;

/// Outcome of one identity check. Failures are reported, not thrown.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    pub fn check(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self
    {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Verdict {
            name: name.into(),
            pass: lhs == rhs,
            lhs,
            rhs,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn and(name: impl Into<String>, parts: &[Verdict]) -> Self {
        Verdict {
            name: name.into(),
            pass: parts.iter().all(|v| v.pass),
            lhs: parts.iter().filter(|v| v.pass).count().to_string(),
            rhs: parts.len().to_string(),
            detail: parts
                .iter()
                .filter(|v| !v.pass)
                .map(|v| format!("{}: {} != {}", v.name, v.lhs, v.rhs))
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: {} {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.lhs,
            if self.pass { "=" } else { "!=" },
            self.rhs
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}
