//! Reference implementations that share no code with the main pipeline,
//! used by the acceptance suite.

pub mod standard;
