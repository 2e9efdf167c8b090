//! Compile-replace: a copying traversal that finds `^[ ... ^]`-delimited
//! regions on a chosen side of a network, compiles the delimited symbol
//! text as a regular expression, and splices the crossproduct of the
//! compiled network with the region's opposite-side string back in.
//!
//! Delimiter symbols are removed from the result. When a delimiter arc
//! carries a real symbol on the opposite side (entry pairing is free to do
//! that), the symbol is kept as an epsilon-paired residue so projections
//! survive unchanged.

use crate::classes::ClassRegistry;
use crate::error::{Error, Result};
use crate::network::{Builder, Label, Network, Side, StateId};
use crate::regex::{compile, parse, tokenize, Definitions};
use crate::symbol::SymbolId;

/// A delimiter-free path between one `^[` arc and one `^]` arc.
struct Region {
    /// Source state of the opening arc.
    origin: StateId,
    /// Destination state of the closing arc.
    terminus: StateId,
    /// Labels strictly between the delimiters.
    labels: Vec<Label>,
    open_label: Label,
    close_label: Label,
}

/// Recompiles every delimited region found on `side` and splices the
/// results in place; a delimiter-free network comes back as an equivalent
/// copy. The result is normalized.
pub fn compile_replace(
    net: &Network,
    side: Side,
    defs: &Definitions,
    classes: &ClassRegistry,
) -> Result<Network> {
    let net = net.normalize();
    let table = net.table().clone();
    let open = table.delim_open();
    let close = table.delim_close();

    if !net.has_symbol_on_side(open, side) {
        if net.has_symbol_on_side(close, side) {
            return Err(Error::UnbalancedDelimiter(
                "`^]` without a preceding `^[`".into(),
            ));
        }
        return Ok(net);
    }

    let mut b = Builder::new(&table);
    b.add_states(net.num_states());
    b.set_start(net.start());
    for s in 0..net.num_states() as StateId {
        b.set_final(s, net.is_final(s));
    }

    // copying traversal of everything outside a region; openings accumulate
    // as termini of processed regions open further regions
    let mut visited = vec![false; net.num_states()];
    let mut openings: Vec<(StateId, Label, StateId)> = Vec::new();
    let mut regions: Vec<Region> = Vec::new();
    copy_outside(
        &net,
        side,
        open,
        close,
        &mut b,
        &mut visited,
        &mut openings,
        net.start(),
    )?;
    let mut pending = 0;
    while pending < openings.len() {
        let (origin, open_label, entry) = openings[pending];
        pending += 1;
        let found = walk_region(&net, side, open, close, origin, entry, open_label)?;
        for region in found {
            // normal processing resumes at the destination of the closing arc
            copy_outside(
                &net,
                side,
                open,
                close,
                &mut b,
                &mut visited,
                &mut openings,
                region.terminus,
            )?;
            regions.push(region);
        }
    }

    for region in &regions {
        let splice = build_splice(&net, side, defs, classes, region)?;
        let eps = Label::identity(SymbolId::EPSILON);
        let off = b.import(&splice);
        b.add_arc(region.origin, eps, off + splice.start());
        for f in splice.final_states() {
            b.set_final(off + f, false);
            b.add_arc(off + f, eps, region.terminus);
        }
    }

    Ok(b.build().normalize())
}

/// Copies delimiter-free arcs reachable from `seed`, collecting `^[` arcs.
#[allow(clippy::too_many_arguments)]
fn copy_outside(
    net: &Network,
    side: Side,
    open: SymbolId,
    close: SymbolId,
    b: &mut Builder,
    visited: &mut [bool],
    openings: &mut Vec<(StateId, Label, StateId)>,
    seed: StateId,
) -> Result<()> {
    if visited[seed as usize] {
        return Ok(());
    }
    visited[seed as usize] = true;
    let mut queue = vec![seed];
    while let Some(s) = queue.pop() {
        for arc in net.arcs(s) {
            let sym = arc.label.side(side);
            if sym == open {
                openings.push((s, arc.label, arc.dest));
            } else if sym == close {
                return Err(Error::UnbalancedDelimiter(
                    "`^]` reachable without a preceding `^[`".into(),
                ));
            } else {
                b.add_arc(s, arc.label, arc.dest);
                if !visited[arc.dest as usize] {
                    visited[arc.dest as usize] = true;
                    queue.push(arc.dest);
                }
            }
        }
    }
    Ok(())
}

/// Enumerates all delimiter-free paths from `entry` to a closing arc.
fn walk_region(
    net: &Network,
    side: Side,
    open: SymbolId,
    close: SymbolId,
    origin: StateId,
    entry: StateId,
    open_label: Label,
) -> Result<Vec<Region>> {
    let mut regions = Vec::new();
    let mut on_stack = vec![false; net.num_states()];
    let mut labels: Vec<Label> = Vec::new();
    walk(
        net,
        side,
        open,
        close,
        origin,
        entry,
        open_label,
        &mut on_stack,
        &mut labels,
        &mut regions,
    )?;
    Ok(regions)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    net: &Network,
    side: Side,
    open: SymbolId,
    close: SymbolId,
    origin: StateId,
    state: StateId,
    open_label: Label,
    on_stack: &mut Vec<bool>,
    labels: &mut Vec<Label>,
    regions: &mut Vec<Region>,
) -> Result<()> {
    if net.is_final(state) {
        return Err(Error::UnbalancedDelimiter(
            "a path ends inside a delimited region".into(),
        ));
    }
    on_stack[state as usize] = true;
    for arc in net.arcs(state) {
        let sym = arc.label.side(side);
        if sym == open {
            on_stack[state as usize] = false;
            return Err(Error::NestedDelimiter);
        }
        if sym == close {
            regions.push(Region {
                origin,
                terminus: arc.dest,
                labels: labels.clone(),
                open_label,
                close_label: arc.label,
            });
            continue;
        }
        if on_stack[arc.dest as usize] {
            on_stack[state as usize] = false;
            return Err(Error::CyclicRegion);
        }
        labels.push(arc.label);
        let result = walk(
            net, side, open, close, origin, arc.dest, open_label, on_stack, labels, regions,
        );
        labels.pop();
        result?;
    }
    on_stack[state as usize] = false;
    Ok(())
}

/// Steps 1-4 for one region path: extract text, compile it, keep the
/// opposite side, combine by crossproduct, and wrap delimiter residues.
fn build_splice(
    net: &Network,
    side: Side,
    defs: &Definitions,
    classes: &ClassRegistry,
    region: &Region,
) -> Result<Network> {
    let table = net.table();
    let opposite = side.opposite();

    let text = region
        .labels
        .iter()
        .map(|l| l.side(side))
        .filter(|s| !s.is_epsilon())
        .map(|s| table.name(s))
        .collect::<Vec<_>>()
        .join(" ");
    let kept: Vec<SymbolId> = region
        .labels
        .iter()
        .map(|l| l.side(opposite))
        .filter(|s| !s.is_epsilon())
        .collect();

    let compiled = (|| -> Result<Network> {
        let tokens = tokenize(&text)?;
        let ast = parse(&tokens)?;
        compile(&ast, defs, classes, table)
    })()
    .map_err(|e| Error::Region {
        text: text.clone(),
        source: Box::new(e),
    })?;
    if compiled.sigma().contains(&table.delim_open())
        || compiled.sigma().contains(&table.delim_close())
    {
        return Err(Error::ReservedDelimiter { text });
    }

    let kept_net = Network::string_automaton(table, &kept);
    let mut splice = match side {
        Side::Lower => kept_net.crossproduct(&compiled)?,
        Side::Upper => compiled.crossproduct(&kept_net)?,
    };

    let residue = |label: Label| -> Option<Network> {
        let sym = label.side(opposite);
        if sym.is_epsilon() {
            None
        } else {
            Some(match opposite {
                Side::Upper => Network::atom(table, sym, SymbolId::EPSILON),
                Side::Lower => Network::atom(table, SymbolId::EPSILON, sym),
            })
        }
    };
    if let Some(prefix) = residue(region.open_label) {
        splice = prefix.concat(&splice)?;
    }
    if let Some(suffix) = residue(region.close_label) {
        splice = splice.concat(&suffix)?;
    }
    Ok(splice)
}
