pub mod battery;
pub mod catalog;
pub mod colimit;
pub mod error;
pub mod fpgroup;
pub mod group;
pub mod groupoid;
pub mod intmat;
pub mod module;
pub mod par;
pub mod presented;
pub mod scenario;
pub mod word;
pub mod xmod;
pub mod xsq;

pub use error::{Error, Result};
pub use groupoid::ValidationReport;
