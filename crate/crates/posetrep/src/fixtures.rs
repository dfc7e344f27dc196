//! Built-in poset fixtures, embedded as data and exportable as JSON.

use crate::poset::Poset;

/// The 12-vertex rank-3 lattice coming from polygon dissections
/// (a Stokes lattice). 3-regular Hasse diagram; wild via a cycle with one
/// commutative square.
pub fn stokes() -> Poset {
    let labels = (0..12).map(|i| i.to_string()).collect();
    let covers = [
        (9, 0),
        (9, 3),
        (9, 8),
        (0, 2),
        (0, 10),
        (3, 10),
        (3, 5),
        (8, 1),
        (8, 11),
        (2, 1),
        (2, 7),
        (10, 7),
        (11, 5),
        (11, 6),
        (1, 6),
        (5, 4),
        (6, 4),
        (7, 4),
    ];
    Poset::from_covers(labels, &covers).expect("fixture data is acyclic")
}

pub fn fixture_by_name(name: &str) -> Option<Poset> {
    match name {
        "stokes" => Some(stokes()),
        _ => None,
    }
}

pub const FIXTURE_NAMES: &[&str] = &["stokes"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stokes_shape() {
        let p = stokes();
        assert_eq!(p.len(), 12);
        assert_eq!(p.covers().len(), 18);
        assert!(p.is_lattice());
        assert_eq!(p.hasse_degrees().1, Some(3));
        // transitive reduction is a no-op on the raw cover data
        assert_eq!(p.covers().len(), 18);
    }
}
