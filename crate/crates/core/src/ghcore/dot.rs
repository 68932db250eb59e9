//! Graphviz rendering of a game at a fixed input pair.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::flow::flow;
use super::game::GardenHoseGame;
use super::matching::Side;
use super::GameError;

const HIGHLIGHT: &str = "color=\"blue\", penwidth=3";

fn node(v: u32, side: Side) -> String {
    match (v, side) {
        (0, _) => "tap".to_string(),
        (v, Side::Alice) => format!("a{v}"),
        (v, Side::Bob) => format!("b{v}"),
    }
}

/// Renders pipes as horizontal edges between an Alice column and a Bob
/// column, hoses as edges within a column, and highlights the water path.
///
/// Output is deterministic for fixed inputs.
pub fn render_diagram(game: &GardenHoseGame, x: u64, y: u64) -> Result<String, GameError> {
    let path = flow(game, x, y)?;
    let s = game.size();
    let n = game.n();

    let mut on_path: HashSet<(String, String)> = HashSet::new();
    for w in path.vertices.windows(2) {
        let a = node(w[0].vertex, w[0].side);
        let b = node(w[1].vertex, w[1].side);
        on_path.insert((a.clone(), b.clone()));
        on_path.insert((b, a));
    }
    let style = |a: &str, b: &str| {
        if on_path.contains(&(a.to_string(), b.to_string())) {
            format!(", {HIGHLIGHT}")
        } else {
            String::new()
        }
    };

    let mut out = String::new();
    let _ = writeln!(out, "graph gardenhose {{");
    let _ = writeln!(
        out,
        "  label=\"x={} y={} exit={}\";",
        super::bits::to_string(x, n),
        super::bits::to_string(y, n),
        path.terminal_side
    );
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    let _ = writeln!(out, "  subgraph cluster_alice {{");
    let _ = writeln!(out, "    label=\"Alice\";");
    let _ = writeln!(out, "    tap [shape=doublecircle, label=\"0\"];");
    for v in 1..=s {
        let _ = writeln!(out, "    a{v} [label=\"{v}\"];");
    }
    let _ = writeln!(out, "  }}");
    if s > 0 {
        let _ = writeln!(out, "  subgraph cluster_bob {{");
        let _ = writeln!(out, "    label=\"Bob\";");
        for v in 1..=s {
            let _ = writeln!(out, "    b{v} [label=\"{v}\"];");
        }
        let _ = writeln!(out, "  }}");
    }
    for v in 1..=s {
        let (a, b) = (node(v, Side::Alice), node(v, Side::Bob));
        let _ = writeln!(out, "  {a} -- {b} [class=\"pipe\"{}];", style(&a, &b));
    }
    for (side, m) in [(Side::Alice, game.alice(x)), (Side::Bob, game.bob(y))] {
        for &(u, v) in m.edges() {
            let (a, b) = (node(u, side), node(v, side));
            let _ = writeln!(out, "  {a} -- {b} [class=\"hose\", style=dashed{}];", style(&a, &b));
        }
    }
    let _ = writeln!(out, "}}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghcore::{Matching, Strategy};

    #[test]
    fn empty_game_has_only_the_tap() {
        let g = GardenHoseGame::new(1, 0, Strategy::rule(|_| Matching::empty()), Strategy::rule(|_| Matching::empty())).unwrap();
        let dot = render_diagram(&g, 0, 0).unwrap();
        assert!(dot.contains("tap ["));
        assert!(!dot.contains("--"));
        assert!(!dot.contains("a1"));
    }

    #[test]
    fn output_is_deterministic() {
        let g = GardenHoseGame::new(
            1,
            3,
            Strategy::rule(|x| Matching::from_edges([(0, 1 + x as u32)])),
            Strategy::rule(|y| Matching::from_edges([(1 + y as u32, 3)])),
        )
        .unwrap();
        assert_eq!(render_diagram(&g, 1, 0).unwrap(), render_diagram(&g, 1, 0).unwrap());
    }
}
