pub mod bae;
pub mod fig2;
pub mod identify;
pub mod spectrum;
pub mod verify;

pub use bae::cmd_bae;
pub use fig2::cmd_fig2;
pub use identify::cmd_identify;
pub use spectrum::cmd_spectrum;
pub use verify::cmd_verify;
