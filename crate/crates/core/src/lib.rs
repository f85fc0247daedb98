pub mod config;
pub mod interp;
pub mod json;
pub mod morphism;
pub mod object;
pub mod oracle;
pub mod ops;
pub mod property;
pub mod transfer;
pub mod word;
