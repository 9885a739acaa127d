//! Finite-dimensional algebras, bimodules between them, and tensor products over
//! an algebra: the objects, 1-morphisms and 2-morphisms of the bimodule 2-category.

mod bimodule;
mod structure;
mod tensor;

pub use bimodule::{
    check_bimodule_map, module_hom_space, same_algebra, unvectorize, Bimodule, BimoduleMap,
};
pub use structure::{validate_algebra, Algebra, AlgebraHom, RawAlgebra};
pub use tensor::{balanced_pairing_to_map, tensor_over, PairTable, TensorOverAlgebra};
