//! Exchange rates of the constrained dynamics.
//!
//! The exchange across bond (x, x+1) is unlocked by blocks of m+1
//! consecutive sites covering the bond whose sites off the bond are all
//! occupied:
//!
//! ```text
//! r_{x,x+1}(eta) = sum_{y=x-m+1}^{x}  prod_{z in [y, y+m] \ {x, x+1}} eta(z)
//! ```
//!
//! Each of the m windows excludes exactly the two bond sites (both always
//! lie inside [y, y+m] for y in the stated range), so the rate never reads
//! eta(x) or eta(x+1). The rate is therefore invariant under exchanging the
//! bond contents, which is the discrete symmetry making every homogeneous
//! product measure reversible. For m = 2 the formula collapses to
//! eta(x-1) + eta(x+2).

use super::Configuration;

/// Constraint part of the exchange rate across bond (x, x+1).
/// Exact integer in {0, ..., m}.
#[inline]
pub fn jump_rate(cfg: &Configuration, x: usize, m: usize) -> u32 {
    debug_assert!(m >= 2, "constraint range must be at least 2");
    debug_assert!(cfg.len() > m + 1, "window must not wrap onto the bond");
    let xi = x as isize;
    let mi = m as isize;
    let mut rate = 0u32;
    for y in (xi - mi + 1)..=xi {
        let mut occupied = 1u8;
        for z in y..=(y + mi) {
            // Raw offsets: within one window of m+1 consecutive integers no
            // two values alias the same torus site, so comparing against the
            // unwrapped bond indices is exact.
            if z == xi || z == xi + 1 {
                continue;
            }
            occupied &= cfg.occ(z);
            if occupied == 0 {
                break;
            }
        }
        rate += u32::from(occupied);
    }
    rate
}

/// Full transition rate of the exchange across bond (x, x+1): the move only
/// changes the configuration when the bond carries exactly one particle, so
/// the constraint factor is multiplied by (eta(x) - eta(x+1))^2.
#[inline]
pub fn bond_rate(cfg: &Configuration, x: usize, m: usize) -> u32 {
    let xi = x as isize;
    if cfg.occ(xi) != cfg.occ(xi + 1) {
        jump_rate(cfg, x, m)
    } else {
        0
    }
}

/// Sum of `bond_rate` over all N bonds.
pub fn total_bond_rate(cfg: &Configuration, m: usize) -> u64 {
    (0..cfg.len()).map(|x| u64::from(bond_rate(cfg, x, m))).sum()
}

/// A configuration is blocked when no exchange can change it; blocked
/// configurations are absorbing for the dynamics.
pub fn is_blocked(cfg: &Configuration, m: usize) -> bool {
    (0..cfg.len()).all(|x| bond_rate(cfg, x, m) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_rate_reads_flanking_sites() {
        // r_{x,x+1} = eta(x-1) + eta(x+2) for m = 2.
        let cfg = Configuration::from_bits("110110");
        for x in 0..6 {
            let expected = u32::from(cfg.occ(x as isize - 1)) + u32::from(cfg.occ(x as isize + 2));
            assert_eq!(jump_rate(&cfg, x, 2), expected, "bond {x}");
        }
    }

    #[test]
    fn full_ring_has_maximal_jump_rate_but_no_moves() {
        let cfg = Configuration::full(8);
        for x in 0..8 {
            assert_eq!(jump_rate(&cfg, x, 3), 3);
            assert_eq!(bond_rate(&cfg, x, 3), 0);
        }
        assert!(is_blocked(&cfg, 3));
    }

    #[test]
    fn isolated_pairs_are_blocked() {
        // Two particles with two empty sites on each side: every window of
        // m+1 = 3 sites covering an asymmetric bond has an empty off-bond
        // site.
        let cfg = Configuration::from_bits("100100");
        assert_eq!(total_bond_rate(&cfg, 2), 0);
        assert!(is_blocked(&cfg, 2));
    }

    #[test]
    fn mobile_pair_moves() {
        let cfg = Configuration::from_bits("110000");
        assert!(!is_blocked(&cfg, 2));
        // Bond (1,2): eta(1)=1, eta(2)=0 differ; r = eta(0) + eta(3) = 1.
        assert_eq!(bond_rate(&cfg, 1, 2), 1);
    }
}
