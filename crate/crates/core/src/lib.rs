pub mod error;
pub mod exactnum;
pub mod partition;
pub mod tensor;

pub use error::{Error, Result};
pub use exactnum::{Matrix, Scalar};
pub use partition::{Partition, PartitionVector};
pub use tensor::Tensor;
pub mod bigraph;
pub use bigraph::BilabelledGraph;
pub mod functor;
pub mod enumerator;
pub mod random;
pub mod report;
pub mod verify;
