//! Spectral-sequence pages with declared differentials, and long exact
//! sequence ledgers.

mod les;
mod page;

pub use les::{les_solve, ConnectingDecl, LesMode, LesRole};
pub use page::{
    admissible_image, apply_differentials, assemble_page, total_poly, DiffImage, DifferentialDecl,
    Page, Unresolved, Variance,
};
