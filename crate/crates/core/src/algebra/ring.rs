use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct variable names.
///
/// Names are either plain identifiers (`[A-Za-z][A-Za-z0-9_]*`) or moment
/// symbols of the form `E[...]`. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarRing {
    names: Arc<[String]>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_moment_symbol(name: &str) -> bool {
    name.len() > 3 && name.starts_with("E[") && name.ends_with(']') && !name[2..name.len() - 1].contains(['[', ']'])
}

impl VarRing {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) && !is_moment_symbol(name) {
                return Err(Error::InvalidRing(format!("bad variable name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(VarRing { names: names.into() })
    }

    /// Ring with no variables; polynomials over it are constants.
    pub fn empty() -> Self {
        VarRing { names: Vec::new().into() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new ring with `extra` appended.
    pub fn extend<I, S>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarRing::new(self.names.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }

    /// A new ring keeping only the variables for which `keep` holds.
    pub fn retain(&self, mut keep: impl FnMut(usize, &str) -> bool) -> Self {
        let names: Vec<String> = self.names.iter().enumerate().filter(|(i, n)| keep(*i, n)).map(|(_, n)| n.clone()).collect();
        VarRing { names: names.into() }
    }

    /// A variable name starting with `stem` that does not occur in this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (1..).map(|i| format!("{stem}{i}")).find(|cand| self.index_of(cand).is_none()).unwrap()
    }
}

impl fmt::Debug for VarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarRing{:?}", &*self.names)
    }
}
