//! Local arc patterns detected in triangulations near the standard one.

use std::collections::BTreeMap;

use arc_complex::flip::{self, BallOptions, MarkedTriangulation};
use arc_complex::rigidity::{detect_configuration, Configuration};
use arc_complex::{ArcClass, Surface};

fn main() -> arc_complex::Result<()> {
    let s = Surface::new(0, 5)?;
    let ball = flip::ball(&MarkedTriangulation::standard(s)?, BallOptions::radius(1))?;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut shown = Vec::new();
    for node in &ball.nodes {
        let m = &node.marked;
        let n = m.classes().len();
        for skip in 0..n {
            for skip2 in skip + 1..n {
                for k in [4, 5] {
                    let set: Vec<ArcClass> = (0..n)
                        .filter(|&i| i != skip && (k == 5 || i != skip2))
                        .take(k)
                        .map(|i| m.class(i).clone())
                        .collect();
                    let cfg = detect_configuration(m, &set)?;
                    *counts.entry(cfg.name()).or_default() += 1;
                    if cfg != Configuration::None && !shown.contains(&cfg.name()) {
                        shown.push(cfg.name());
                        println!("{}", serde_json::to_string(&cfg).expect("serializable"));
                    }
                }
            }
        }
    }
    println!("{counts:?}");
    Ok(())
}
