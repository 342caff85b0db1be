//! p-adic valuation, norm and metric on rationals, truncated p-adic integers, and the
//! map onto the Cantor set `C(p)` that keeps `p` of every `2p - 1` subintervals.

mod cantor;
mod int;
mod valuation;

pub use cantor::{cantor_interval, cantor_iterates, cantor_map, CantorInterval, CantorIterates, MAX_CANTOR_INTERVALS};
pub use int::PadicInt;
pub use valuation::{
    euclid_padic_probe, is_prime, ord_p, padic_dist, padic_norm, ProbeReport, Valuation,
};
