pub mod cli;
pub mod fincat;
pub mod gray;
pub mod mates;
pub mod phi;
pub mod poset;
pub mod probes;
pub mod radix;
pub mod theta2;
pub mod twocat;
