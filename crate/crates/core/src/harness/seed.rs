//! Counter-based seed derivation. A child seed is obtained by folding each
//! counter into the master seed through the splitmix64 finaliser, so every
//! generated object depends only on the master seed and its own coordinates.

/// One step of the splitmix64 generator applied to `x`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the object at coordinates `parts` under `master`.
pub fn child_seed(master: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

pub(crate) const TAG_GRAPH: u64 = 1;
pub(crate) const TAG_PROFILE: u64 = 2;
