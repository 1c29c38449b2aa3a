//! Independent oracles and seeded random generators for the acceptance run.
//!
//! Every oracle here recomputes its answer from first principles instead of
//! calling the routine it checks.

pub mod oracle;
pub mod random;

/// Seed for all randomized checks; `LBKIT_SEED` overrides the default.
pub fn seed() -> u64 {
    std::env::var("LBKIT_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0x005e_ed1b)
}
