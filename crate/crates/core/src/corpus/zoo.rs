//! Zoo domain generator.
//!
//! Terrain: positions `p1..pN` laid out column by column in two rows.
//! With gates, the last column is a second cage joined to its neighbor
//! column by one gate per row; otherwise all positions share one cage.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZooVariant {
    /// Direct laws for every effect; ramifications only define auxiliary fluents.
    Direct,
    /// Rider movement and riding termination come from ramifications.
    Indirect,
    /// Indirect plus the direct rider-move and old-position laws.
    Dual,
}

impl ZooVariant {
    pub const ALL: [ZooVariant; 3] = [ZooVariant::Direct, ZooVariant::Indirect, ZooVariant::Dual];

    pub fn name(self) -> &'static str {
        match self {
            ZooVariant::Direct => "direct",
            ZooVariant::Indirect => "indirect",
            ZooVariant::Dual => "dual",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ZooVariant::ALL.into_iter().find(|v| v.name() == s)
    }

    pub fn file_name(self) -> String {
        format!("zoo_{}.e", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZooSpec {
    pub variant: ZooVariant,
    pub positions: usize,
    /// (animal, species) in declaration order.
    pub animals: Vec<(String, String)>,
    /// Gates, feeding, mounting, and the auxiliary `same_pos` fluent.
    pub extensions: bool,
}

impl ZooSpec {
    pub fn new(variant: ZooVariant, positions: usize) -> Self {
        let animals = [("john", "human"), ("jane", "human"), ("elly", "elephant"), ("dumpo", "elephant")];
        ZooSpec {
            variant,
            positions,
            animals: animals.iter().map(|(a, s)| (a.to_string(), s.to_string())).collect(),
            extensions: true,
        }
    }

    /// Just elly and john, no extensions: small enough for the oracle.
    pub fn pair(variant: ZooVariant, positions: usize) -> Self {
        ZooSpec {
            variant,
            positions,
            animals: vec![("john".into(), "human".into()), ("elly".into(), "elephant".into())],
            extensions: false,
        }
    }
}

pub struct Terrain {
    pub neighbors: Vec<(usize, usize)>,
    /// (gate number, position, position), 1-based.
    pub gates: Vec<(usize, usize, usize)>,
}

/// Neighbor pairs and gates over positions `1..=n`.
pub fn terrain(n: usize, gates: bool) -> Terrain {
    let cols = n.div_ceil(2);
    let cage_b = if gates && cols >= 2 { cols - 1 } else { usize::MAX };
    let at = |col: usize, row: usize| {
        let p = col * 2 + row + 1;
        (p <= n).then_some(p)
    };
    let mut neighbors = Vec::new();
    let mut gate_list = Vec::new();
    for col in 0..cols {
        if let (Some(a), Some(b)) = (at(col, 0), at(col, 1)) {
            neighbors.push((a, b));
        }
        if col + 1 < cols {
            for row in 0..2 {
                if let (Some(a), Some(b)) = (at(col, row), at(col + 1, row)) {
                    if col + 1 == cage_b {
                        gate_list.push((gate_list.len() + 1, a, b));
                    } else {
                        neighbors.push((a, b));
                    }
                }
            }
        }
    }
    neighbors.sort();
    Terrain { neighbors, gates: gate_list }
}

/// The full Zoo domain for `variant` over `positions` positions (3 to 15).
pub fn generate(variant: ZooVariant, positions: usize) -> String {
    generate_spec(&ZooSpec::new(variant, positions))
}

pub fn generate_spec(spec: &ZooSpec) -> String {
    assert!(spec.positions >= 2, "the Zoo needs at least two positions");
    let ext = spec.extensions;
    let terrain = terrain(spec.positions, ext);
    let positions: Vec<String> = (1..=spec.positions).map(|i| format!("p{i}")).collect();
    let mut species: Vec<&str> = Vec::new();
    for (_, s) in &spec.animals {
        if !species.contains(&s.as_str()) {
            species.push(s);
        }
    }
    let mut o = String::new();
    macro_rules! w {
        ($($arg:tt)*) => { let _ = writeln!(o, $($arg)*); };
    }
    w!("% Zoo domain, {} representation, {} positions.", spec.variant.name(), spec.positions);
    w!("% Generated by lang_e::corpus::zoo; regenerate instead of editing.");
    w!("");
    w!("sort animal: {}.", spec.animals.iter().map(|(a, _)| a.as_str()).collect::<Vec<_>>().join(", "));
    w!("sort species: {}.", species.join(", "));
    w!("sort position: {}.", positions.join(", "));
    if ext && !terrain.gates.is_empty() {
        w!("sort gate: {}.", terrain.gates.iter().map(|g| format!("g{}", g.0)).collect::<Vec<_>>().join(", "));
    }
    w!("");
    w!("% Landscape: constant fluents, closed world at time 0.");
    w!("constant fluent animal_species(animal, species).");
    w!("constant fluent neighbor(position, position).");
    let gates = ext && !terrain.gates.is_empty();
    if gates {
        w!("constant fluent gate_joins(gate, position, position).");
    }
    w!("");
    for (a, s) in &spec.animals {
        w!("animal_species({a}, {s}) holds-at 0.");
    }
    for (a, b) in &terrain.neighbors {
        w!("neighbor(p{a}, p{b}) holds-at 0.");
    }
    w!("neighbor(P1, P2) whenever {{ neighbor(P2, P1) }}.");
    if gates {
        for (g, a, b) in &terrain.gates {
            w!("gate_joins(g{g}, p{a}, p{b}) holds-at 0.");
        }
        w!("gate_joins(G, P1, P2) whenever {{ gate_joins(G, P2, P1) }}.");
    }
    w!("");
    w!("fluent animal_pos(animal, position).");
    w!("fluent reachable(animal, position).");
    w!("fluent rides(animal, animal).");
    if ext {
        w!("% Corpus extensions.");
        w!("fluent same_pos(animal, animal).");
        if gates {
            w!("fluent gate_open(gate).");
        }
        w!("fluent hungry(animal).");
    }
    w!("");
    w!("action move_to_position(animal, position).");
    w!("action throwoff(animal, animal).");
    w!("action getoff(animal, animal, position).");
    if ext {
        w!("action mount_animal(animal, animal).");
        if gates {
            w!("action open_gate(animal, gate).");
            w!("action close_gate(animal, gate).");
            w!("action pass_gate(animal, gate, position, position).");
        }
        w!("action feed_animal(animal, animal).");
    }
    w!("");
    w!("% Every animal has exactly one position.");
    w!("neg animal_pos(A, P1) whenever {{ animal_pos(A, P), P1 != P }}.");
    let placed: Vec<String> = positions.iter().map(|p| format!("neg animal_pos(A, {p})")).collect();
    w!("false whenever {{ {} }}.", placed.join(", "));
    w!("");
    w!("reachable(A, P) whenever {{ animal_pos(A, P1), neighbor(P1, P) }}.");
    w!("neg reachable(A, P) whenever {{ animal_pos(A, P1), neg neighbor(P1, P) }}.");
    w!("");
    w!("false whenever {{ animal_species(A, human), rides(A1, A) }}.");
    w!("false whenever {{ animal_species(A, elephant), rides(A, A1) }}.");
    w!("neg rides(A, A1) whenever {{ rides(A, A2), A1 != A2 }}.");
    if ext {
        w!("same_pos(A, A1) whenever {{ animal_pos(A, P), animal_pos(A1, P) }}.");
        w!("neg same_pos(A, A1) whenever {{ animal_pos(A, P), animal_pos(A1, P1), P1 != P }}.");
    }
    w!("");
    match spec.variant {
        ZooVariant::Direct => {
            w!("% Riders share the position of their mount.");
            w!("false whenever {{ rides(A1, A), animal_pos(A, P), neg animal_pos(A1, P) }}.");
        }
        ZooVariant::Indirect | ZooVariant::Dual => {
            w!("animal_pos(A1, P) whenever {{ animal_pos(A, P), rides(A1, A) }}.");
            w!("neg rides(A, A1) whenever {{ animal_pos(A, P), animal_pos(A1, P1), P1 != P }}.");
        }
    }
    w!("");
    w!("move_to_position(A, P) initiates animal_pos(A, P) when {{ reachable(A, P) }}.");
    w!("move_to_position(A, P) needs {{ reachable(A, P) }}.");
    w!("move_to_position(A, P) needs {{ neg rides(A, A1) }}.");
    if spec.variant != ZooVariant::Indirect {
        w!("move_to_position(A, P) initiates animal_pos(A1, P) when {{ rides(A1, A) }}.");
        w!("move_to_position(A, P) terminates animal_pos(A, P1) when {{ animal_pos(A, P1) }}.");
    }
    if spec.variant == ZooVariant::Direct {
        w!("move_to_position(A, P) terminates animal_pos(A1, P1) when {{ rides(A1, A), animal_pos(A1, P1) }}.");
    }
    w!("");
    w!("throwoff(A1, A2) initiates animal_pos(A2, P) when {{ reachable(A2, P) }}.");
    w!("throwoff(A1, A2) needs {{ rides(A2, A1) }}.");
    if spec.variant == ZooVariant::Direct {
        w!("throwoff(A1, A2) terminates rides(A2, A1).");
        w!("throwoff(A1, A2) terminates animal_pos(A2, P1) when {{ animal_pos(A2, P1) }}.");
    }
    w!("");
    w!("getoff(A, A1, P) initiates animal_pos(A, P).");
    w!("getoff(A, A1, P) terminates rides(A, A1).");
    w!("getoff(A, A1, P) needs {{ rides(A, A1), reachable(A, P) }}.");
    if spec.variant == ZooVariant::Direct {
        w!("getoff(A, A1, P) terminates animal_pos(A, P1) when {{ animal_pos(A, P1) }}.");
    }
    if ext {
        w!("");
        w!("mount_animal(A, A1) initiates rides(A, A1).");
        w!("mount_animal(A, A1) needs {{ same_pos(A, A1), neg rides(A, A2) }}.");
        if gates {
            w!("");
            w!("open_gate(A, G) initiates gate_open(G).");
            w!("open_gate(A, G) needs {{ animal_species(A, human) }}.");
            w!("close_gate(A, G) terminates gate_open(G).");
            w!("close_gate(A, G) needs {{ animal_species(A, human) }}.");
            w!("pass_gate(A, G, P1, P2) initiates animal_pos(A, P2).");
            w!("pass_gate(A, G, P1, P2) needs {{ animal_pos(A, P1), gate_joins(G, P1, P2), gate_open(G), neg rides(A, A1) }}.");
            if spec.variant == ZooVariant::Direct {
                w!("pass_gate(A, G, P1, P2) terminates animal_pos(A, P1).");
            }
        }
        w!("");
        w!("feed_animal(A, A1) terminates hungry(A1).");
        w!("feed_animal(A, A1) needs {{ animal_species(A, human) }}.");
    }
    o
}
