use std::collections::HashMap;

use crate::hamiltonian::SpinHamiltonian;
use crate::lattice::{Boundary, Lattice};
use crate::{CompileError, Result};

/// Edge partition into color classes; each class is a list of indices into
/// the Hamiltonian's edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub partitions: Vec<Vec<usize>>,
}

impl EdgeColoring {
    /// Γ, counting every class including empty ones.
    pub fn n_colors(&self) -> usize {
        self.partitions.len()
    }

    /// Disjoint cover, vertex-disjoint classes, and at most Δ+1 nonempty classes.
    pub fn verify(&self, h: &SpinHamiltonian) -> Result<()> {
        let mut seen = vec![false; h.edges.len()];
        for class in &self.partitions {
            let mut used = vec![false; h.n_qubits];
            for &i in class {
                let e = h.edges.get(i).ok_or_else(|| CompileError::Graph(format!("edge index {i} out of range")))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(CompileError::Graph(format!("edge {i} colored twice")));
                }
                for q in [e.j, e.k] {
                    if std::mem::replace(&mut used[q], true) {
                        return Err(CompileError::Graph(format!("two edges of one color meet at qubit {q}")));
                    }
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(CompileError::Graph(format!("edge {i} left uncolored")));
        }
        let nonempty = self.partitions.iter().filter(|c| !c.is_empty()).count();
        if nonempty > h.max_degree() + 1 {
            return Err(CompileError::Graph(format!("{nonempty} colors exceed max degree + 1 = {}", h.max_degree() + 1)));
        }
        Ok(())
    }
}

/// Color the interaction graph. With a lattice, bonds take their lattice
/// color (even/odd for chains, A–D for grids); otherwise a Misra–Gries
/// coloring with at most Δ+1 colors.
pub fn color_edges(h: &SpinHamiltonian, lattice: Option<(Lattice, Boundary)>) -> Result<EdgeColoring> {
    h.validate()?;
    let coloring = match lattice {
        Some((lat, bc)) => lattice_coloring(h, lat, bc)?,
        None => misra_gries(h),
    };
    coloring.verify(h)?;
    Ok(coloring)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn lattice_coloring(h: &SpinHamiltonian, lat: Lattice, bc: Boundary) -> Result<EdgeColoring> {
    if lat.n_sites() != h.n_qubits {
        return Err(CompileError::Schedule(format!("lattice has {} sites, Hamiltonian {} qubits", lat.n_sites(), h.n_qubits)));
    }
    let bonds = lat.colored_bonds(bc)?;
    let color_of: HashMap<(usize, usize), usize> =
        bonds.iter().enumerate().flat_map(|(c, class)| class.iter().map(move |&(a, b)| (key(a, b), c))).collect();
    let mut partitions = vec![Vec::new(); bonds.len()];
    for (i, e) in h.edges.iter().enumerate() {
        let c = color_of
            .get(&key(e.j, e.k))
            .ok_or_else(|| CompileError::Schedule(format!("edge ({},{}) is not a lattice bond", e.j, e.k)))?;
        partitions[*c].push(i);
    }
    Ok(EdgeColoring { partitions })
}

/// Misra–Gries constructive proof of Vizing's theorem.
fn misra_gries(h: &SpinHamiltonian) -> EdgeColoring {
    let n = h.n_qubits;
    let ncol = h.max_degree() + 1;
    // at[v][c] = neighbor joined to v by an edge of color c
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; ncol]; n];
    let set = |at: &mut Vec<Vec<Option<usize>>>, u: usize, v: usize, c: usize| {
        at[u][c] = Some(v);
        at[v][c] = Some(u);
    };
    let color_of = |at: &Vec<Vec<Option<usize>>>, u: usize, v: usize| at[u].iter().position(|&w| w == Some(v));
    let free =
        |at: &Vec<Vec<Option<usize>>>, v: usize| at[v].iter().position(Option::is_none).expect("Δ+1 colors leave one free");

    for e in &h.edges {
        let (u, v) = (e.j, e.k);
        // maximal fan of u starting at v
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = (0..ncol).filter(|&c| at[last][c].is_none()).find_map(|c| at[u][c].filter(|w| !fan.contains(w)));
            match next {
                Some(w) => fan.push(w),
                None => break,
            }
        }
        let c = free(&at, u);
        let d = free(&at, *fan.last().unwrap());
        if c != d {
            // invert the cd-path leaving u along d
            let mut path = Vec::new();
            let (mut cur, mut col) = (u, d);
            while let Some(next) = at[cur][col] {
                path.push((cur, next, col));
                cur = next;
                col = if col == d { c } else { d };
            }
            for &(a, b, col) in &path {
                at[a][col] = None;
                at[b][col] = None;
            }
            for &(a, b, col) in &path {
                set(&mut at, a, b, if col == d { c } else { d });
            }
        }
        // first fan vertex with d free whose prefix is still a fan
        let mut w = fan.len() - 1;
        for i in 0..fan.len() {
            if i > 0 {
                let ci = color_of(&at, u, fan[i]).expect("fan edges beyond the first are colored");
                if at[fan[i - 1]][ci].is_some() {
                    break;
                }
            }
            if at[fan[i]][d].is_none() {
                w = i;
                break;
            }
        }
        for i in 0..w {
            let ci = color_of(&at, u, fan[i + 1]).expect("fan edge colored");
            at[u][ci] = None;
            at[fan[i + 1]][ci] = None;
            set(&mut at, u, fan[i], ci);
        }
        set(&mut at, u, fan[w], d);
    }

    let index: HashMap<(usize, usize), usize> = h.edges.iter().enumerate().map(|(i, e)| (key(e.j, e.k), i)).collect();
    let mut partitions = vec![Vec::new(); ncol];
    for (u, row) in at.iter().enumerate() {
        for (c, w) in row.iter().enumerate() {
            if let Some(v) = *w {
                if u < v {
                    partitions[c].push(index[&(u, v)]);
                }
            }
        }
    }
    for p in &mut partitions {
        p.sort_unstable();
    }
    partitions.retain(|p| !p.is_empty());
    EdgeColoring { partitions }
}
