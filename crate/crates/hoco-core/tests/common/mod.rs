//! Shared test support. The oracle module is deliberately primitive: it
//! recomputes the same invariants as the library through a different route
//! (i128, no transform tracking, rank counting instead of cokernel
//! presentations) so the two can check each other.

pub mod oracle;
