pub mod error;
pub mod json;
pub mod linalg;
pub mod preorder;
pub mod scalar;
pub mod groups;
pub mod topology;
pub mod valuation;
