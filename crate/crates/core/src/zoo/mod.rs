//! Group constructors and the simple-group order database.

mod field;
mod j1;
mod orders;
mod products;
mod projective;

pub use field::{is_prime, prime_power, Field, FieldSpec, MAX_FIELD_ORDER};
pub use j1::{j1, J1_DEGREE, J1_ORDER};
pub use orders::{
    factorize, filter_simple_orders, filter_simple_orders_with_bound, order_matches,
    simple_order_table, SimpleGroupRecord, DEFAULT_PSL2_BOUND,
};
pub use products::{alternating, cyclic, dihedral, direct_product, direct_with_z2, swap_involution, symmetric};
pub use projective::{pgl2, psl2, psl2_order, sl2};
