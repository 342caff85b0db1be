//! Hilbert shadows from stored descriptors against a search over the string's orbit.

use invset::dirac::SpinorSample;
use invset::exactmath::{rat, ExactAngle};
use invset::samplespace::{expand_counts, hilbert_shadow, reconstruct_descriptor, OrbitDescriptor};

fn all_matches(n_bits: u32, count: u64, target: &invset::BitString) -> Vec<u64> {
    (0..1u64 << (n_bits - 1)).filter(|&r| &expand_counts(n_bits, count, r).unwrap() == target).collect()
}

#[test]
fn stored_descriptor_is_among_search_hits() {
    let mut ambiguous = 0;
    for n_bits in 3..=7u32 {
        let len = 1u64 << n_bits;
        for count in 0..=len {
            for rot in 0..len / 2 {
                let s = expand_counts(n_bits, count, rot).unwrap();
                let stored = s.descriptor().unwrap().clone();
                let hits = all_matches(n_bits, count, &s);
                assert!(hits.contains(&stored.rotation));
                let found = reconstruct_descriptor(&s.clone().into_raw()).unwrap().unwrap();
                assert_eq!(found.rotation, hits[0]);
                if hits.len() == 1 {
                    assert_eq!(found.shadow().unwrap(), hilbert_shadow(&s).unwrap());
                } else {
                    // Symmetric strings: the string alone does not fix the phase.
                    ambiguous += 1;
                    let phases: std::collections::HashSet<_> = hits
                        .iter()
                        .map(|&r| OrbitDescriptor::sample(n_bits, count, r).unwrap().shadow().unwrap().phi_turns)
                        .collect();
                    assert!(phases.len() > 1 || count == 0 || count == len);
                }
            }
        }
    }
    assert!(ambiguous > 0);
}

#[test]
fn phase_strings_are_unambiguous() {
    for n_bits in 3..=10u32 {
        for rot in 0..1u64 << (n_bits - 1) {
            let s = expand_counts(n_bits, 1 << (n_bits - 1), rot).unwrap();
            let found = reconstruct_descriptor(&s.clone().into_raw()).unwrap().unwrap();
            assert_eq!(found.shadow().unwrap(), hilbert_shadow(&s).unwrap());
        }
    }
}

#[test]
fn evolved_spinor_shadows_match_search() {
    let phases = [(0, 1), (3, 16), (1, 2), (7, 8)].map(|(a, b)| ExactAngle::turns_ratio(a, b));
    let psi = SpinorSample::moving(6, &phases, rat(3, 1), [rat(0, 1), rat(4, 1), rat(0, 1)]).unwrap();
    for steps in 0..8 {
        let e = invset::dirac::full_evolve(&psi, steps, 0, 3 * steps, 0);
        assert_eq!(e.searched_turns().unwrap(), e.shadow_turns().unwrap());
    }
}
