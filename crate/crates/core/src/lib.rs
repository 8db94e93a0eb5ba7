//! Operations on the mixed tensor algebra and verification of their identities.
//!
//! * [`tensor`] — dense (p,q) tensors, tensor product, contraction, grading.
//! * [`diagram`] — contraction diagrams (elementary operations) and their enumeration.
//! * [`matrix`] — the deformed commutator on (1,1) tensors and its higher operations.
//! * [`graded`] — the 3-commutator on `A¹₂ ⊕ A²₁` and its identities.
//! * [`symbolic`] — exact free-word expansion over polynomials in `Q(ω)`.

pub mod diagram;
pub mod error;
pub mod graded;
pub mod matrix;
pub mod symbolic;
pub mod tensor;

pub use diagram::{
    apply_diagram, classify_by_output, count_primary_operations, enumerate_diagrams, linear_family,
    ContractionDiagram, EnumOptions, SlotKind, SlotRef,
};
pub use error::{Error, Result};
pub use tensor::{contract, grading, random_tensor, tensor_product, DenseTensor, TensorSampler, TensorShape};
