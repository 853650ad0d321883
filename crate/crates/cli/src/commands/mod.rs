pub mod dynamics;
pub mod report;
pub mod run;
pub mod sweep;
