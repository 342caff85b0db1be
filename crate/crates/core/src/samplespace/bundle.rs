use serde::Serialize;

use super::{BitString, Label};
use crate::error::{Error, Result};
use crate::exactmath::Dyadic;

/// A level-`k` trajectory with its `2^N` children, each labelled by the regime it is
/// attracted to.
#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryBundle {
    pub level: u32,
    /// Regime the parent trajectory was attracted to; `None` at the root.
    pub parent: Option<Label>,
    pub children: BitString,
    /// Regimes chosen on the way down from the root.
    pub history: Vec<Label>,
}

impl TrajectoryBundle {
    pub fn root(children: BitString) -> Self {
        TrajectoryBundle { level: 0, parent: None, children, history: Vec::new() }
    }

    /// Number of children attracted to `a`.
    pub fn n_k(&self) -> u64 {
        self.children.count_a()
    }
}

/// Zoom into the children that went to `chosen`, whose own children are `next_labels`.
pub fn bundle_refine(b: &TrajectoryBundle, chosen: Label, next_labels: BitString) -> Result<TrajectoryBundle> {
    if next_labels.n_bits() != b.children.n_bits() {
        return Err(Error::LengthMismatch {
            expected: b.children.len() as usize,
            found: next_labels.len() as usize,
        });
    }
    let mut history = b.history.clone();
    history.push(chosen);
    Ok(TrajectoryBundle { level: b.level + 1, parent: Some(chosen), children: next_labels, history })
}

/// Counting measure: `n_k / 2^N`.
pub fn haar(b: &TrajectoryBundle) -> Dyadic {
    Dyadic::new(b.n_k(), b.children.n_bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplespace::canonical;

    #[test]
    fn refine_and_measure() {
        let root = TrajectoryBundle::root(canonical(4).unwrap());
        assert_eq!(haar(&root), Dyadic::new(1, 1));
        let all_a = BitString::filled(4, Label::A).unwrap();
        let b1 = bundle_refine(&root, Label::NotA, all_a).unwrap();
        assert_eq!(haar(&b1), Dyadic::one());
        assert_eq!(b1.level, 1);
        let next = BitString::from_bits("0001000100010001").unwrap();
        let b2 = bundle_refine(&b1, Label::A, next.clone()).unwrap();
        assert_eq!(haar(&b2), next.fraction());
        assert_eq!(b2.history, vec![Label::NotA, Label::A]);
        assert!(bundle_refine(&b2, Label::A, canonical(3).unwrap()).is_err());
    }
}
