//! How many classes the inputs fall into for a given auxiliary state.

use hbsa_circuit::build_hbsa_circuit;
use hbsa_measurement::build_table;
use hbsa_state::{Freq, HyperBellIndex, Part};

use crate::ExperimentError;

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

/// Classes of inputs under the transitive closure of "event sets overlap".
pub fn groups(aux: &Part<Freq>) -> Result<Vec<Vec<HyperBellIndex>>, ExperimentError> {
    let sets = build_table(&build_hbsa_circuit(), aux)?.event_sets();
    let all = HyperBellIndex::all();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if !sets.rows[&all[i]].is_disjoint(&sets.rows[&all[j]]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[rj] = ri;
            }
        }
    }
    let mut out: Vec<Vec<HyperBellIndex>> = Vec::new();
    let mut root_of = std::collections::BTreeMap::new();
    for (i, idx) in all.iter().enumerate() {
        let r = find(&mut parent, i);
        let slot = *root_of.entry(r).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[slot].push(*idx);
    }
    Ok(out)
}

/// Number of distinguishable classes; 16 means every input is identified.
pub fn group_count(aux: &Part<Freq>) -> Result<usize, ExperimentError> {
    Ok(groups(aux)?.len())
}
