//! Pattern avoidance in set partitions: containment, exhaustive counting,
//! exact generating functions, structural bijections and Wilf-class evidence.

pub mod avoidance;
pub mod bijections;
pub mod enumeration;
pub mod generate;
pub mod numbers;
pub mod partition;
pub mod series;
pub mod verify;
pub mod wilf;

pub use avoidance::{avoids, contains, count_avoiders};
pub use numbers::BigCount;
pub use partition::{PartitionError, RgfWord, SetPartition};
