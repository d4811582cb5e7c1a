//! Human labels for the handful of types that come with established names;
//! everything else gets an auto-generated label when a poset is built.

use crate::canon::canonicalize;
use crate::quiver::{Quiver, QuiverSetting};
use std::collections::HashMap;
use std::sync::OnceLock;

fn cycle_both_ways(k: usize, each: i64) -> QuiverSetting {
    let mut q = Quiver::zero(k);
    for i in 0..k {
        let j = (i + 1) % k;
        q.arrows[i][j] = q.arrows[i][j].max(each);
        q.arrows[j][i] = q.arrows[j][i].max(each);
    }
    QuiverSetting { quiver: q, dim: vec![1; k] }
}

fn setting(arrows: Vec<Vec<i64>>, dim: Vec<i64>) -> QuiverSetting {
    let n = arrows.len();
    QuiverSetting { quiver: Quiver { n, arrows }, dim }
}

/// The named settings, each given by an explicit construction.
pub fn named_settings() -> Vec<(&'static str, QuiverSetting)> {
    vec![
        ("min", setting(vec![vec![0]], vec![1])),
        ("2loop", setting(vec![vec![2]], vec![2])),
        // two dim-1 vertices, two arrows each way
        ("3_c", cycle_both_ways(2, 2)),
        // two dim-1 vertices, 2 arrows one way and 3 the other
        ("4_2", setting(vec![vec![0, 2], vec![3, 0]], vec![1, 1])),
        // triangle with single arrows both ways
        ("4_3a", cycle_both_ways(3, 1)),
        // oriented triangle with double arrows
        (
            "4_3b",
            setting(
                vec![vec![0, 2, 0], vec![0, 0, 2], vec![2, 0, 0]],
                vec![1, 1, 1],
            ),
        ),
        ("5_4a", cycle_both_ways(4, 1)),
        ("6_5k", cycle_both_ways(5, 1)),
        // star: dim-2 centre, three dim-1 leaves, single arrows both ways
        (
            "6_A",
            setting(
                vec![
                    vec![0, 1, 1, 1],
                    vec![1, 0, 0, 0],
                    vec![1, 0, 0, 0],
                    vec![1, 0, 0, 0],
                ],
                vec![2, 1, 1, 1],
            ),
        ),
        ("7_6a", cycle_both_ways(6, 1)),
        // chain with dims 1-2-2-1, single arrows both ways
        (
            "7_4a",
            setting(
                vec![
                    vec![0, 1, 0, 0],
                    vec![1, 0, 1, 0],
                    vec![0, 1, 0, 1],
                    vec![0, 0, 1, 0],
                ],
                vec![1, 2, 2, 1],
            ),
        ),
    ]
}

fn table() -> &'static HashMap<String, &'static str> {
    static TABLE: OnceLock<HashMap<String, &'static str>> = OnceLock::new();
    TABLE.get_or_init(|| {
        named_settings()
            .into_iter()
            .map(|(name, s)| (canonicalize(&s).hash, name))
            .collect()
    })
}

pub fn lookup(hash: &str) -> Option<String> {
    table().get(hash).map(|s| s.to_string())
}
