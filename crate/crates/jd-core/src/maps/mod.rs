//! Diagram-level maps between strata.

mod blow;
mod delta;
mod eta;
mod lift;
mod rank;

pub use blow::{bd, bd_theta, bu, bu_at, bu_iter, eyeglass_to_theta, flatten, fold_map};
pub use delta::{
    delta, delta_double_prime, delta_double_prime_ordered, delta_prime, delta_prime_mod2, delta_v, delta_vw,
    loop_part, on_sum,
};
pub use eta::{eta, iota_eta, TensorWord};
pub use lift::{
    check_lift, delta_tilde_v, delta_tilde_vw, good_lift, one_loop_kernel_element, one_loop_witness, sym_relation_even,
    sym_relation_odd, two_torsion_relation, two_torsion_witness, SymmetricWitness, TorsionKind,
};
pub use rank::{mobius, rank_a41, rank_a41_totient, rank_d, totient, witt_rank};
