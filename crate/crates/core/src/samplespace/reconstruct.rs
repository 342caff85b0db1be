use super::{expand_counts, BitString, OrbitDescriptor};
use crate::error::{Error, Result};

/// Largest `N` for which [`reconstruct_descriptor`] will search.
pub const MAX_RECONSTRUCT_BITS: u32 = 14;

/// Search for parameters `(count, rotation)` whose construction equals `s` exactly.
///
/// Returns `None` when no member of the constructed family matches, which is the usual
/// situation for rows produced by composing several strings.
pub fn reconstruct_descriptor(s: &BitString) -> Result<Option<OrbitDescriptor>> {
    if s.n_bits() > MAX_RECONSTRUCT_BITS {
        return Err(Error::ResourceLimit(format!(
            "descriptor search limited to N <= {MAX_RECONSTRUCT_BITS}"
        )));
    }
    let count = s.count_a();
    for rotation in 0..s.len() / 2 {
        let c = expand_counts(s.n_bits(), count, rotation)?;
        if &c == s {
            return Ok(c.descriptor().cloned());
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplespace::canonical;

    #[test]
    fn finds_rotations() {
        let c = canonical(5).unwrap();
        for r in 0..16 {
            let d = reconstruct_descriptor(&c.zeta(r).into_raw()).unwrap().unwrap();
            assert_eq!(d.rotation, r as u64);
        }
        let odd = BitString::from_bits("01101000").unwrap();
        assert_eq!(reconstruct_descriptor(&odd).unwrap(), None);
    }
}
