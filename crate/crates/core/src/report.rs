//! Typed pass/fail reports shared by the verification routines. Rendering,
//! timings and digests live in the CLI layer; these carry only the findings.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypothesis echoed as an input assumption, not machine-checked.
    Assumed,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Assumed => write!(f, "assumed"),
            CheckStatus::Skipped => write!(f, "skipped"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub status: CheckStatus,
    /// Witness indices or other short context; empty when not needed.
    pub detail: String,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckItem { name: name.into(), status: CheckStatus::Pass, detail: String::new() }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckItem { name: name.into(), status: CheckStatus::Fail, detail: detail.into() }
    }

    pub fn assumed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckItem { name: name.into(), status: CheckStatus::Assumed, detail: detail.into() }
    }

    pub fn of(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            CheckItem::pass(name)
        } else {
            CheckItem::fail(name, detail)
        }
    }
}

/// An ordered list of checks; deterministic given the same inputs.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { items: Vec::new() }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == CheckStatus::Fail)
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            write!(f, "[{}] {}", item.status, item.name)?;
            if !item.detail.is_empty() {
                write!(f, " ({})", item.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
