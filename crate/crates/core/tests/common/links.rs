//! Brute-force coloring counts straight from PD quadruples.

use super::{all_transpositions, conj, Dsu, P};

/// Arc index of every label: labels in slots 1 and 3 of a crossing share an
/// arc. Returns (label -> arc, arc count).
pub fn arcs(crossings: &[[usize; 4]]) -> (std::collections::BTreeMap<usize, usize>, usize) {
    let mut labels: Vec<usize> = crossings.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let pos = |l: usize| labels.binary_search(&l).unwrap();
    let mut dsu = Dsu::new(labels.len());
    for x in crossings {
        dsu.union(pos(x[1]), pos(x[3]));
    }
    let mut roots: Vec<usize> = (0..labels.len()).map(|i| dsu.find(i)).collect();
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for r in roots.iter_mut() {
        *r = distinct.binary_search(r).unwrap();
    }
    (labels.iter().copied().zip(roots).collect(), distinct.len())
}

fn assignments(arcs: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(arcs as u32)).map(move |mut code| {
        (0..arcs)
            .map(|_| {
                let v = code % k;
                code /= k;
                v
            })
            .collect()
    })
}

/// Number of labelings of arcs by `Z/3` with `2·over = in + out` at every
/// crossing.
pub fn fox3(crossings: &[[usize; 4]], free_loops: usize) -> usize {
    let (arc, n) = arcs(crossings);
    let ok = assignments(n, 3)
        .filter(|a| {
            crossings
                .iter()
                .all(|x| (2 * a[arc[&x[1]]] + 6 - a[arc[&x[0]]] - a[arc[&x[2]]]) % 3 == 0)
        })
        .count();
    ok * 3usize.pow(free_loops as u32)
}

/// Number of arc colorings by transpositions of `S_d`; the relation at each
/// crossing is symmetric because transpositions are involutions.
pub fn transposition_colorings(crossings: &[[usize; 4]], free_loops: usize, d: usize) -> usize {
    let ts: Vec<P> = all_transpositions(d);
    let (arc, n) = arcs(crossings);
    let ok = assignments(n, ts.len())
        .filter(|a| {
            crossings
                .iter()
                .all(|x| conj(&ts[a[arc[&x[0]]]], &ts[a[arc[&x[1]]]]) == ts[a[arc[&x[2]]]])
        })
        .count();
    ok * ts.len().pow(free_loops as u32)
}

/// Colorings by an involutory quandle given as a table, where `x ▷ y` and
/// `x ▷⁻¹ y` agree, so crossing signs are irrelevant. Each coloring is
/// returned as a map from label to element.
pub fn involutory_colorings(
    crossings: &[[usize; 4]],
    table: &[Vec<usize>],
) -> Vec<std::collections::BTreeMap<usize, usize>> {
    let (arc, n) = arcs(crossings);
    assignments(n, table.len())
        .filter(|a| {
            crossings
                .iter()
                .all(|x| table[a[arc[&x[0]]]][a[arc[&x[1]]]] == a[arc[&x[2]]])
        })
        .map(|a| arc.iter().map(|(&l, &i)| (l, a[i])).collect())
        .collect()
}
