pub mod algebra;
pub mod cli;
pub mod combinat;
pub mod config;
pub mod pfaffian;
pub mod picard;
pub mod spinor;
pub mod treedeg;
pub mod verify;
