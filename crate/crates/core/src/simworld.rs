//! Simulation models and the stochastic grid world.
//!
//! A [`SimulationModel`] runs a plan once from its fixed initial state and
//! reports whether the resulting trace satisfies a requirement. It is a
//! Bernoulli experiment: repeated runs with different streams may disagree.
//!
//! [`GridWorld`] moves an agent over a rectangular grid with obstacles. Each
//! action is inverted with probability `p_fail` (up becomes down, left becomes
//! right). A move into an obstacle leaves the agent in place and counts one
//! collision; a move off the grid leaves the agent in place and counts
//! nothing, unless the world was built with wall collisions enabled, in which
//! case it counts like an obstacle. Coordinates are `(x, y)` with the origin at the bottom-left
//! corner; up is `y + 1` and right is `x + 1`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::planner::Plan;
use crate::requirements::{Requirement, RequirementError, Trace};
use crate::rng::SeedTree;

/// Variables recorded in every grid-world trace, in column order.
pub const TRACE_VARS: [&str; 3] = ["x", "y", "collisions"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorldError {
    #[error("invalid world parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate world: no free cell adjacent to start")]
    Degenerate,
    #[error("malformed world text on line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("plan/horizon mismatch: plan has {plan} actions, requirement horizon is {horizon}")]
    PlanHorizonMismatch { plan: usize, horizon: usize },
    #[error("action index {action} out of range for {actions} actions")]
    InvalidAction { action: usize, actions: usize },
    #[error(transparent)]
    Requirement(#[from] RequirementError),
}

/// One simulated run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub sat: bool,
    pub trace: Trace,
}

/// A stochastic model that judges a plan against a requirement by running it.
pub trait SimulationModel {
    fn action_count(&self) -> usize;

    /// Run `plan` once. The outcome must equal `phi.evaluate(&trace)` for the
    /// trace produced, and equal streams must give equal outcomes.
    fn simulate<R: Rng + ?Sized>(
        &self,
        plan: &Plan,
        phi: &Requirement,
        rng: &mut R,
    ) -> Result<Outcome, SimError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Up,
    Down,
    Left,
    Right,
}

impl Move {
    /// Action order used by plans: index 0 is `Up`.
    pub const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Left, Move::Right];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Move> {
        Self::ALL.get(index).copied()
    }

    pub fn inverse(self) -> Move {
        match self {
            Move::Up => Move::Down,
            Move::Down => Move::Up,
            Move::Left => Move::Right,
            Move::Right => Move::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Up => 'U',
            Move::Down => 'D',
            Move::Left => 'L',
            Move::Right => 'R',
        }
    }

    pub fn from_letter(letter: char) -> Option<Move> {
        match letter.to_ascii_uppercase() {
            'U' => Some(Move::Up),
            'D' => Some(Move::Down),
            'L' => Some(Move::Left),
            'R' => Some(Move::Right),
            _ => None,
        }
    }

    fn delta(self) -> (isize, isize) {
        match self {
            Move::Up => (0, 1),
            Move::Down => (0, -1),
            Move::Left => (-1, 0),
            Move::Right => (1, 0),
        }
    }
}

/// Render a grid plan as a string of `U`/`D`/`L`/`R`. Out-of-range action
/// indices render as `?`.
pub fn plan_letters(plan: &Plan) -> String {
    plan.iter()
        .map(|&a| Move::from_index(a).map_or('?', Move::letter))
        .collect()
}

/// Parse a `U`/`D`/`L`/`R` string into a plan.
pub fn plan_from_letters(text: &str) -> Result<Plan, String> {
    text.chars()
        .map(|c| Move::from_letter(c).map(Move::index).ok_or_else(|| format!("invalid move `{c}`")))
        .collect::<Result<Vec<_>, _>>()
        .map(Plan::new)
}

/// How the obstacle ratio is converted into an obstacle count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatioMode {
    /// Obstacles make up `ratio` of all cells.
    #[default]
    OfAllCells,
    /// Obstacles per free cell equals `ratio`.
    ObstaclesToFree,
}

impl RatioMode {
    pub fn obstacle_count(self, ratio: f64, cells: usize) -> usize {
        let share = match self {
            RatioMode::OfAllCells => ratio,
            RatioMode::ObstaclesToFree => ratio / (1.0 + ratio),
        };
        (share * cells as f64).round() as usize
    }
}

impl FromStr for RatioMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "of-all-cells" | "all" => Ok(RatioMode::OfAllCells),
            "obstacles-to-free" | "odds" => Ok(RatioMode::ObstaclesToFree),
            other => Err(format!(
                "unknown ratio mode `{other}` (expected `of-all-cells` or `obstacles-to-free`)"
            )),
        }
    }
}

impl fmt::Display for RatioMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioMode::OfAllCells => "of-all-cells",
            RatioMode::ObstaclesToFree => "obstacles-to-free",
        })
    }
}

/// Source of the action-failure probability.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum FailureMode {
    Fixed(f64),
    /// Drawn once per world from `U[0, 1)`.
    #[default]
    Uniform,
}

impl FromStr for FailureMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("random") {
            return Ok(FailureMode::Uniform);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| format!("invalid failure probability `{s}`"))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("failure probability {p} outside [0, 1]"));
        }
        Ok(FailureMode::Fixed(p))
    }
}

impl fmt::Display for FailureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureMode::Fixed(p) => write!(f, "{p}"),
            FailureMode::Uniform => f.write_str("random"),
        }
    }
}

/// Parameters for [`generate_world`].
#[derive(Debug, Clone, PartialEq)]
pub struct WorldParams {
    pub width: usize,
    pub height: usize,
    pub obstacle_ratio: f64,
    pub ratio_mode: RatioMode,
    pub failure: FailureMode,
    pub wall_collisions: bool,
}

impl Default for WorldParams {
    fn default() -> Self {
        Self {
            width: 10,
            height: 10,
            obstacle_ratio: 0.2,
            ratio_mode: RatioMode::OfAllCells,
            failure: FailureMode::Uniform,
            wall_collisions: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentState {
    pub position: Cell,
    pub collisions: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridWorld {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    start: Cell,
    p_fail: f64,
    wall_collisions: bool,
    vars: Arc<[String]>,
}

impl GridWorld {
    pub fn new(
        width: usize,
        height: usize,
        obstacles: impl IntoIterator<Item = Cell>,
        start: Cell,
        p_fail: f64,
    ) -> Result<Self, WorldError> {
        if width == 0 || height == 0 {
            return Err(WorldError::InvalidParameter(format!(
                "grid must be at least 1x1, got {width}x{height}"
            )));
        }
        if !(0.0..=1.0).contains(&p_fail) {
            return Err(WorldError::InvalidParameter(format!(
                "p_fail {p_fail} outside [0, 1]"
            )));
        }
        if start.x >= width || start.y >= height {
            return Err(WorldError::InvalidParameter(format!("start {start} out of bounds")));
        }
        let mut blocked = vec![false; width * height];
        for cell in obstacles {
            if cell.x >= width || cell.y >= height {
                return Err(WorldError::InvalidParameter(format!(
                    "obstacle {cell} out of bounds"
                )));
            }
            blocked[cell.y * width + cell.x] = true;
        }
        if blocked[start.y * width + start.x] {
            return Err(WorldError::InvalidParameter(format!("start {start} is an obstacle")));
        }
        Ok(Self {
            width,
            height,
            blocked,
            start,
            p_fail,
            wall_collisions: false,
            vars: TRACE_VARS.iter().map(|v| v.to_string()).collect(),
        })
    }

    /// Count moves off the grid as collisions.
    #[must_use]
    pub fn with_wall_collisions(mut self, enabled: bool) -> Self {
        self.wall_collisions = enabled;
        self
    }

    pub fn wall_collisions(&self) -> bool {
        self.wall_collisions
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn p_fail(&self) -> f64 {
        self.p_fail
    }

    pub fn in_bounds(&self, x: isize, y: isize) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    pub fn is_obstacle(&self, cell: Cell) -> bool {
        cell.x < self.width && cell.y < self.height && self.blocked[cell.y * self.width + cell.x]
    }

    pub fn obstacles(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height)
            .flat_map(move |y| (0..self.width).map(move |x| Cell::new(x, y)))
            .filter(|&c| self.is_obstacle(c))
    }

    pub fn obstacle_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }

    fn free_neighbour_of_start(&self) -> bool {
        Move::ALL.iter().any(|m| {
            let (dx, dy) = m.delta();
            let (x, y) = (self.start.x as isize + dx, self.start.y as isize + dy);
            self.in_bounds(x, y) && !self.is_obstacle(Cell::new(x as usize, y as usize))
        })
    }

    pub fn initial_state(&self) -> AgentState {
        AgentState {
            position: self.start,
            collisions: 0,
        }
    }

    /// Apply `mv` without failure noise.
    pub fn apply(&self, state: AgentState, mv: Move) -> AgentState {
        let (dx, dy) = mv.delta();
        let (x, y) = (
            state.position.x as isize + dx,
            state.position.y as isize + dy,
        );
        if !self.in_bounds(x, y) {
            return AgentState {
                collisions: state.collisions + u32::from(self.wall_collisions),
                ..state
            };
        }
        let target = Cell::new(x as usize, y as usize);
        if self.is_obstacle(target) {
            AgentState {
                collisions: state.collisions + 1,
                ..state
            }
        } else {
            AgentState {
                position: target,
                ..state
            }
        }
    }

    /// One noisy step. Consumes exactly one `f64` draw from `rng`.
    pub fn step<R: Rng + ?Sized>(&self, state: AgentState, mv: Move, rng: &mut R) -> AgentState {
        let failed = rng.random::<f64>() < self.p_fail;
        self.apply(state, if failed { mv.inverse() } else { mv })
    }

    fn observe(state: &AgentState) -> [i64; 3] {
        [
            state.position.x as i64,
            state.position.y as i64,
            i64::from(state.collisions),
        ]
    }

    /// Plain-text grid: a `pfail=<p>` header, then one line per row from the
    /// top (`y = height - 1`) down, with `.` free, `#` obstacle, `S` start.
    pub fn to_text(&self) -> String {
        let mut out = format!("pfail={}\n", self.p_fail);
        for y in (0..self.height).rev() {
            for x in 0..self.width {
                let cell = Cell::new(x, y);
                out.push(if cell == self.start {
                    'S'
                } else if self.is_obstacle(cell) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GridWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for GridWorld {
    type Err = WorldError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = |line: usize, message: String| WorldError::Malformed { line, message };
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| malformed(1, "empty input".into()))?;
        let p_fail: f64 = header
            .trim()
            .strip_prefix("pfail=")
            .ok_or_else(|| malformed(1, "expected `pfail=<float>` header".into()))?
            .parse()
            .map_err(|_| malformed(1, "invalid pfail value".into()))?;
        let rows: Vec<&str> = lines.map(str::trim_end).filter(|l| !l.is_empty()).collect();
        if rows.is_empty() {
            return Err(malformed(2, "no grid rows".into()));
        }
        let width = rows[0].chars().count();
        let height = rows.len();
        let mut obstacles = Vec::new();
        let mut start = None;
        for (row, line) in rows.iter().enumerate() {
            if line.chars().count() != width {
                return Err(malformed(row + 2, format!("expected {width} cells")));
            }
            let y = height - 1 - row;
            for (x, c) in line.chars().enumerate() {
                match c {
                    '.' => {}
                    '#' => obstacles.push(Cell::new(x, y)),
                    'S' if start.is_none() => start = Some(Cell::new(x, y)),
                    'S' => return Err(malformed(row + 2, "more than one start cell".into())),
                    other => return Err(malformed(row + 2, format!("unexpected cell `{other}`"))),
                }
            }
        }
        let start = start.ok_or_else(|| malformed(2, "no start cell".into()))?;
        GridWorld::new(width, height, obstacles, start, p_fail)
    }
}

impl SimulationModel for GridWorld {
    fn action_count(&self) -> usize {
        Move::ALL.len()
    }

    fn simulate<R: Rng + ?Sized>(
        &self,
        plan: &Plan,
        phi: &Requirement,
        rng: &mut R,
    ) -> Result<Outcome, SimError> {
        let horizon = phi.horizon()?;
        if plan.len() != horizon {
            return Err(SimError::PlanHorizonMismatch {
                plan: plan.len(),
                horizon,
            });
        }
        let moves = plan
            .iter()
            .map(|&a| {
                Move::from_index(a).ok_or(SimError::InvalidAction {
                    action: a,
                    actions: Move::ALL.len(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut trace = Trace::with_capacity(Arc::clone(&self.vars), horizon + 1);
        let mut state = self.initial_state();
        trace.push(&Self::observe(&state));
        for mv in moves {
            state = self.step(state, mv, rng);
            trace.push(&Self::observe(&state));
        }
        let sat = phi.evaluate(&trace)?;
        Ok(Outcome { sat, trace })
    }
}

/// Random world: obstacles drawn without replacement from every cell except
/// the start at `(0, 0)`, and `p_fail` drawn once if it is not fixed.
///
/// Placements that wall in the start cell are redrawn from the same stream,
/// so the result stays a pure function of `seed`.
pub fn generate_world(seed: u64, params: &WorldParams) -> Result<GridWorld, WorldError> {
    let WorldParams {
        width,
        height,
        obstacle_ratio,
        ratio_mode,
        failure,
        wall_collisions,
    } = *params;
    if width == 0 || height == 0 {
        return Err(WorldError::InvalidParameter(format!(
            "grid must be at least 1x1, got {width}x{height}"
        )));
    }
    if !(0.0..1.0).contains(&obstacle_ratio) {
        return Err(WorldError::InvalidParameter(format!(
            "obstacle ratio {obstacle_ratio} outside [0, 1)"
        )));
    }
    let start = Cell::new(0, 0);
    let cells = width * height;
    let count = ratio_mode.obstacle_count(obstacle_ratio, cells);
    let neighbours = usize::from(width > 1) + usize::from(height > 1);
    // At least one neighbour of the start must stay free.
    if neighbours == 0 || count + 1 > cells - 1 {
        return Err(WorldError::Degenerate);
    }

    let mut rng = SeedTree::new(seed).stream("world", 0);
    let p_fail = match failure {
        FailureMode::Fixed(p) => p,
        FailureMode::Uniform => rng.random::<f64>(),
    };
    const MAX_DRAWS: usize = 1000;
    for _ in 0..MAX_DRAWS {
        // Candidate k maps to cell index k + 1, skipping the start at index 0.
        let obstacles = index::sample(&mut rng, cells - 1, count)
            .into_iter()
            .map(|k| Cell::new((k + 1) % width, (k + 1) / width));
        let world = GridWorld::new(width, height, obstacles, start, p_fail)?
            .with_wall_collisions(wall_collisions);
        if world.free_neighbour_of_start() {
            return Ok(world);
        }
    }
    Err(WorldError::Degenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::requirements::Comparator;

    fn open(width: usize, height: usize, p_fail: f64) -> GridWorld {
        GridWorld::new(width, height, [], Cell::new(0, 0), p_fail).unwrap()
    }

    fn within_two() -> Requirement {
        Requirement::always(10, Requirement::atom("collisions", Comparator::Le, 2))
    }

    #[test]
    fn default_world_has_twenty_obstacles_off_start() {
        for seed in 0..50 {
            let world = generate_world(seed, &WorldParams::default()).unwrap();
            assert_eq!(world.obstacle_count(), 20);
            assert!(!world.is_obstacle(Cell::new(0, 0)));
            assert!((0.0..1.0).contains(&world.p_fail()));
        }
    }

    #[test]
    fn ratio_modes() {
        assert_eq!(RatioMode::OfAllCells.obstacle_count(0.2, 100), 20);
        assert_eq!(RatioMode::ObstaclesToFree.obstacle_count(0.2, 100), 17);
        let params = WorldParams {
            obstacle_ratio: 0.0,
            ..WorldParams::default()
        };
        assert_eq!(generate_world(1, &params).unwrap().obstacle_count(), 0);
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let params = WorldParams::default();
        assert_eq!(generate_world(9, &params), generate_world(9, &params));
        assert_ne!(generate_world(9, &params), generate_world(10, &params));
    }

    #[test]
    fn generation_rejects_bad_parameters() {
        let crowded = WorldParams {
            width: 3,
            height: 1,
            obstacle_ratio: 0.9,
            ..WorldParams::default()
        };
        assert_eq!(generate_world(0, &crowded), Err(WorldError::Degenerate));
        let single = WorldParams {
            width: 1,
            height: 1,
            obstacle_ratio: 0.0,
            ..WorldParams::default()
        };
        assert_eq!(generate_world(0, &single), Err(WorldError::Degenerate));
        let bad_ratio = WorldParams {
            obstacle_ratio: 1.0,
            ..WorldParams::default()
        };
        assert!(matches!(
            generate_world(0, &bad_ratio),
            Err(WorldError::InvalidParameter(_))
        ));
    }

    #[test]
    fn start_always_has_an_exit() {
        let tight = WorldParams {
            width: 3,
            height: 3,
            obstacle_ratio: 0.6,
            ..WorldParams::default()
        };
        for seed in 0..100 {
            let world = generate_world(seed, &tight).unwrap();
            assert!(world.free_neighbour_of_start());
        }
    }

    #[test]
    fn deterministic_moves() {
        let world = GridWorld::new(3, 3, [Cell::new(1, 1)], Cell::new(0, 0), 0.0).unwrap();
        let mut rng = SeedTree::new(0).stream("t", 0);
        let s0 = world.initial_state();

        let right = world.step(s0, Move::Right, &mut rng);
        assert_eq!(right.position, Cell::new(1, 0));
        assert_eq!(right.collisions, 0);

        let bump = world.step(right, Move::Up, &mut rng);
        assert_eq!(bump.position, Cell::new(1, 0));
        assert_eq!(bump.collisions, 1);

        let wall = world.step(s0, Move::Left, &mut rng);
        assert_eq!(wall, s0);

        let walled = world.clone().with_wall_collisions(true);
        let bump = walled.step(s0, Move::Down, &mut rng);
        assert_eq!(bump.position, s0.position);
        assert_eq!(bump.collisions, 1);
    }

    #[test]
    fn certain_failure_inverts() {
        let world = open(3, 3, 1.0);
        let mut rng = SeedTree::new(0).stream("t", 0);
        let s = AgentState {
            position: Cell::new(1, 1),
            collisions: 0,
        };
        assert_eq!(world.step(s, Move::Up, &mut rng).position, Cell::new(1, 0));
        assert_eq!(world.step(s, Move::Left, &mut rng).position, Cell::new(2, 1));
    }

    #[test]
    fn inverted_move_into_obstacle_collides() {
        let world = GridWorld::new(3, 3, [Cell::new(1, 0)], Cell::new(1, 1), 1.0).unwrap();
        let mut rng = SeedTree::new(0).stream("t", 0);
        let s = world.step(world.initial_state(), Move::Up, &mut rng);
        assert_eq!(s.position, Cell::new(1, 1));
        assert_eq!(s.collisions, 1);
    }

    #[test]
    fn simulate_without_obstacles_always_satisfies() {
        let world = open(10, 10, 0.5);
        let plan = plan_from_letters("UUDDLRLRUR").unwrap();
        let mut rng = SeedTree::new(1).stream("t", 0);
        for _ in 0..100 {
            let outcome = world.simulate(&plan, &within_two(), &mut rng).unwrap();
            assert!(outcome.sat);
            assert_eq!(outcome.trace.len(), 11);
        }
    }

    #[test]
    fn simulate_checks_plan_length() {
        let world = open(4, 4, 0.0);
        let mut rng = SeedTree::new(1).stream("t", 0);
        let err = world
            .simulate(&plan_from_letters("UU").unwrap(), &within_two(), &mut rng)
            .unwrap_err();
        assert_eq!(err, SimError::PlanHorizonMismatch { plan: 2, horizon: 10 });
        let phi = Requirement::always(1, Requirement::atom("collisions", Comparator::Le, 0));
        let err = world.simulate(&Plan::new(vec![7]), &phi, &mut rng).unwrap_err();
        assert_eq!(err, SimError::InvalidAction { action: 7, actions: 4 });
    }

    #[test]
    fn simulate_consumes_one_draw_per_action() {
        use rand::RngCore;
        let world = generate_world(3, &WorldParams::default()).unwrap();
        let plan = plan_from_letters("RRUURRUULL").unwrap();
        let mut rng = SeedTree::new(5).stream("t", 0);
        world.simulate(&plan, &within_two(), &mut rng).unwrap();
        let after_sim = rng.next_u64();

        let mut reference = SeedTree::new(5).stream("t", 0);
        for _ in 0..10 {
            reference.random::<f64>();
        }
        assert_eq!(after_sim, reference.next_u64());
    }

    #[test]
    fn text_round_trip() {
        let world = generate_world(4, &WorldParams::default()).unwrap();
        let text = world.to_text();
        assert!(text.starts_with("pfail="));
        assert_eq!(text.lines().count(), 11);
        assert_eq!(text.lines().last().unwrap().chars().next(), Some('S'));
        assert_eq!(text.parse::<GridWorld>().unwrap(), world);
    }

    #[test]
    fn malformed_text() {
        assert!(matches!(
            "p=0.1\nS.\n".parse::<GridWorld>(),
            Err(WorldError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            "pfail=0.1\nS.\n.\n".parse::<GridWorld>(),
            Err(WorldError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            "pfail=0.1\n..\n".parse::<GridWorld>(),
            Err(WorldError::Malformed { .. })
        ));
    }

    #[test]
    fn letters() {
        let plan = plan_from_letters("udLR").unwrap();
        assert_eq!(plan.actions(), &[0, 1, 2, 3]);
        assert_eq!(plan_letters(&plan), "UDLR");
        assert!(plan_from_letters("UX").is_err());
    }
}
