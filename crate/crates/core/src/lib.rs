pub mod algebra;
pub mod characters;
pub mod error;
pub mod genfun;
pub mod hurwitz;
pub mod local_p2;
pub mod one_partition;
pub mod partitions;
pub mod qschur;
pub mod report;
pub mod two_partition;

pub use error::Error;
pub use partitions::Partition;
pub use report::Report;
