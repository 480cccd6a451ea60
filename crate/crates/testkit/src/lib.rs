//! Slow, independent oracles used by the test suites: brute-force secant
//! enumeration, parameter-plane sign sweeps, crossing-diagram invariants,
//! and polynomial factories with known root multisets.
