use std::fmt;
use std::sync::Arc;

use super::TensorError;

/// A named basis vector and its position in the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub name: String,
    pub index: usize,
}

/// An ordered list of uniquely named basis vectors.
///
/// Cloning is cheap: labels live behind an `Arc` so every matrix over the
/// same basis shares one allocation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Basis {
    labels: Arc<[BasisLabel]>,
}

impl Basis {
    pub fn new<I, S>(names: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<BasisLabel> = Vec::new();
        for (index, name) in names.into_iter().enumerate() {
            let name = name.into();
            if labels.iter().any(|l| l.name == name) {
                return Err(TensorError::DuplicateLabel(name));
            }
            labels.push(BasisLabel { name, index });
        }
        if labels.is_empty() {
            return Err(TensorError::EmptyBasis);
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Basis with labels `0`, `1`, ..., `dim - 1`.
    pub fn numbered(dim: usize) -> Self {
        Self::new((0..dim).map(|i| i.to_string())).expect("numbered labels are unique")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn name(&self, index: usize) -> &str {
        &self.labels[index].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, label) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&label.name)?;
        }
        f.write_str("]")
    }
}
