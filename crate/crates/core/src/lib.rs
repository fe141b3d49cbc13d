//! Finite orthomodular lattices, the Boolean contexts they contain, the
//! completely additive spectral presheaf over those contexts, and
//! daseinisation of lattice elements into its Heyting algebra of subobjects.

pub mod elemset;
pub mod lattice;
pub mod context;
pub mod presheaf;
pub mod dasein;
pub mod theorem;
