//! Set partitions and ordered set partitions of [n] = {1,…,n}.

mod enumerate;
mod ordered;
mod text;

pub use enumerate::{collect, enumerate, principal_ideal, PartitionClass, PartitionStream, SetPartitions};
pub use ordered::{
    intmax, outintmax, IntervalIter, MultisetWord, OrderedPseudoPartition, OrderedSetPartition, Restriction,
    SetPartition,
};
pub use text::{parse_partition, parse_word};

#[cfg(test)]
mod tests;
