//! The extensive-form game: doors, moves, information sets and pure
//! strategies of both actors.
//!
//! A round has four moves. Monte hides the prize behind door `theta`,
//! Conie picks door `x`, Monte reveals a door other than `x` that does
//! not hide the prize and offers the remaining door `y`, and Conie
//! finally holds (`z = x`) or switches (`z = y`). She wins iff `z = theta`.
//! On a mismatch (`x != theta`) the offer is forced to `y = theta`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three doors, numbered 1 to 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Door(u8);

impl Door {
    pub const ONE: Door = Door(1);
    pub const TWO: Door = Door(2);
    pub const THREE: Door = Door(3);
    pub const ALL: [Door; 3] = [Door::ONE, Door::TWO, Door::THREE];

    pub fn new(number: i64) -> Result<Door> {
        match number {
            1..=3 => Ok(Door(number as u8)),
            _ => Err(Error::InvalidDoor(number)),
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Zero-based index, for arrays aligned to doors.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn from_index(index: usize) -> Door {
        Door::ALL[index]
    }

    /// The two other doors, smaller first.
    pub fn others(self) -> [Door; 2] {
        match self.0 {
            1 => [Door(2), Door(3)],
            2 => [Door(1), Door(3)],
            _ => [Door(1), Door(2)],
        }
    }

    /// The door distinct from both `a` and `b`. Requires `a != b`.
    pub fn third(a: Door, b: Door) -> Door {
        debug_assert_ne!(a, b);
        Door(6 - a.0 - b.0)
    }

    /// Whether `offer` is the smaller of the two doors other than `self`.
    pub fn is_smaller_other(self, offer: Door) -> bool {
        self.others()[0] == offer
    }
}

impl TryFrom<u8> for Door {
    type Error = Error;

    fn try_from(value: u8) -> Result<Door> {
        Door::new(i64::from(value))
    }
}

impl From<Door> for u8 {
    fn from(door: Door) -> u8 {
        door.0
    }
}

impl fmt::Display for Door {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Conie's second move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// Stick with the initial pick (`m` in strategy codes).
    Hold,
    /// Take the offered door (`s` in strategy codes).
    Switch,
}

impl Action {
    pub fn code(self) -> char {
        match self {
            Action::Hold => 'm',
            Action::Switch => 's',
        }
    }

    pub fn from_code(c: char) -> Option<Action> {
        match c {
            'm' => Some(Action::Hold),
            's' => Some(Action::Switch),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Hold => "hold",
            Action::Switch => "switch",
        }
    }
}

impl FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Action> {
        match s {
            "hold" | "m" => Ok(Action::Hold),
            "switch" | "s" => Ok(Action::Switch),
            other => Err(Error::InvalidStrategy {
                code: other.to_string(),
                reason: "expected hold or switch".into(),
            }),
        }
    }
}

/// Pure strategies with a fixed canonical enumeration order.
pub trait PureStrategy: Copy + Eq + Ord + fmt::Display + fmt::Debug + 'static {
    const COUNT: usize;

    fn all() -> &'static [Self];

    /// Position in the canonical order.
    fn index(self) -> usize;
}

/// Monte's pure strategy: the hiding door plus the door offered on a match.
///
/// Written `θy`, e.g. `12`: prize behind door 1, switch offered to door 2
/// when Conie picks door 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MontePure {
    theta: Door,
    offer_on_match: Door,
}

const fn monte(theta: u8, offer: u8) -> MontePure {
    MontePure {
        theta: Door(theta),
        offer_on_match: Door(offer),
    }
}

static MONTE_ALL: [MontePure; 6] = [
    monte(1, 2),
    monte(1, 3),
    monte(2, 1),
    monte(2, 3),
    monte(3, 1),
    monte(3, 2),
];

impl MontePure {
    pub fn new(theta: Door, offer_on_match: Door) -> Result<MontePure> {
        if theta == offer_on_match {
            return Err(Error::InvalidStrategy {
                code: format!("{theta}{offer_on_match}"),
                reason: "the offer on a match must differ from the prize door".into(),
            });
        }
        Ok(MontePure {
            theta,
            offer_on_match,
        })
    }

    pub fn theta(self) -> Door {
        self.theta
    }

    pub fn offer_on_match(self) -> Door {
        self.offer_on_match
    }

    /// The door offered after Conie picks `pick`.
    pub fn offer(self, pick: Door) -> Door {
        if pick == self.theta {
            self.offer_on_match
        } else {
            self.theta
        }
    }

    /// Whether the match offer is the smaller-numbered of the two candidates.
    pub fn offers_smaller(self) -> bool {
        self.theta.is_smaller_other(self.offer_on_match)
    }
}

impl PureStrategy for MontePure {
    const COUNT: usize = 6;

    fn all() -> &'static [MontePure] {
        &MONTE_ALL
    }

    fn index(self) -> usize {
        2 * self.theta.index() + usize::from(!self.offers_smaller())
    }
}

impl fmt::Display for MontePure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{}{}", self.theta, self.offer_on_match))
    }
}

impl FromStr for MontePure {
    type Err = Error;

    fn from_str(s: &str) -> Result<MontePure> {
        let bad = |reason: &str| Error::InvalidStrategy {
            code: s.to_string(),
            reason: reason.to_string(),
        };
        let digits: Vec<char> = s.chars().collect();
        if digits.len() != 2 {
            return Err(bad("expected two door digits, e.g. 12"));
        }
        let door = |c: char| {
            c.to_digit(10)
                .and_then(|d| Door::new(i64::from(d)).ok())
                .ok_or_else(|| bad("doors are 1, 2, 3"))
        };
        MontePure::new(door(digits[0])?, door(digits[1])?)
    }
}

/// Conie's pure strategy: a pick plus an action for each of the two
/// possible offers, indexed by offered door order.
///
/// Written e.g. `2sm`: pick door 2, switch when offered door 1 (the
/// smaller candidate), hold when offered door 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConiePure {
    pick: Door,
    on_smaller_offer: Action,
    on_larger_offer: Action,
}

const fn conie(pick: u8, on_smaller_offer: Action, on_larger_offer: Action) -> ConiePure {
    ConiePure {
        pick: Door(pick),
        on_smaller_offer,
        on_larger_offer,
    }
}

use Action::{Hold as M, Switch as S};

static CONIE_ALL: [ConiePure; 12] = [
    conie(1, S, S),
    conie(1, M, S),
    conie(1, S, M),
    conie(1, M, M),
    conie(2, S, S),
    conie(2, M, S),
    conie(2, S, M),
    conie(2, M, M),
    conie(3, S, S),
    conie(3, M, S),
    conie(3, S, M),
    conie(3, M, M),
];

impl ConiePure {
    pub fn new(pick: Door, on_smaller_offer: Action, on_larger_offer: Action) -> ConiePure {
        ConiePure {
            pick,
            on_smaller_offer,
            on_larger_offer,
        }
    }

    /// Pick `pick`, then switch at both offers.
    pub fn always_switch(pick: Door) -> ConiePure {
        ConiePure::new(pick, Action::Switch, Action::Switch)
    }

    pub fn pick(self) -> Door {
        self.pick
    }

    pub fn on_smaller_offer(self) -> Action {
        self.on_smaller_offer
    }

    pub fn on_larger_offer(self) -> Action {
        self.on_larger_offer
    }

    /// The action taken when `offer` is offered. Requires `offer != pick`.
    pub fn action_for(self, offer: Door) -> Action {
        if self.pick.is_smaller_other(offer) {
            self.on_smaller_offer
        } else {
            self.on_larger_offer
        }
    }

    pub fn is_always_switching(self) -> bool {
        self.on_smaller_offer == Action::Switch && self.on_larger_offer == Action::Switch
    }

    pub fn is_constant_action(self) -> bool {
        self.on_smaller_offer == self.on_larger_offer
    }

    pub fn is_context_dependent(self) -> bool {
        !self.is_constant_action()
    }
}

impl PureStrategy for ConiePure {
    const COUNT: usize = 12;

    fn all() -> &'static [ConiePure] {
        &CONIE_ALL
    }

    fn index(self) -> usize {
        let small = usize::from(self.on_smaller_offer == Action::Hold);
        let large = usize::from(self.on_larger_offer == Action::Hold);
        4 * self.pick.index() + 2 * large + small
    }
}

impl PartialOrd for ConiePure {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConiePure {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for ConiePure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!(
            "{}{}{}",
            self.pick,
            self.on_smaller_offer.code(),
            self.on_larger_offer.code()
        ))
    }
}

impl FromStr for ConiePure {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConiePure> {
        let bad = |reason: &str| Error::InvalidStrategy {
            code: s.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 3 {
            return Err(bad("expected a door digit and two of s/m, e.g. 2sm"));
        }
        let pick = chars[0]
            .to_digit(10)
            .and_then(|d| Door::new(i64::from(d)).ok())
            .ok_or_else(|| bad("doors are 1, 2, 3"))?;
        let small = Action::from_code(chars[1]).ok_or_else(|| bad("actions are s or m"))?;
        let large = Action::from_code(chars[2]).ok_or_else(|| bad("actions are s or m"))?;
        Ok(ConiePure::new(pick, small, large))
    }
}

macro_rules! serde_via_display {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_display!(MontePure);
serde_via_display!(ConiePure);

/// Conie's information set at her second move: she knows her pick and the
/// offered door, not where the prize is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoSet {
    pick: Door,
    offer: Door,
}

static INFO_SETS: [InfoSet; 6] = [
    InfoSet { pick: Door(1), offer: Door(2) },
    InfoSet { pick: Door(1), offer: Door(3) },
    InfoSet { pick: Door(2), offer: Door(1) },
    InfoSet { pick: Door(2), offer: Door(3) },
    InfoSet { pick: Door(3), offer: Door(1) },
    InfoSet { pick: Door(3), offer: Door(2) },
];

impl InfoSet {
    pub fn new(pick: Door, offer: Door) -> Result<InfoSet> {
        if pick == offer {
            return Err(Error::InvalidStrategy {
                code: format!("*{pick}{offer}"),
                reason: "the offered door must differ from the pick".into(),
            });
        }
        Ok(InfoSet { pick, offer })
    }

    /// The six sets `*12, *13, *21, *23, *31, *32`.
    pub fn all() -> &'static [InfoSet; 6] {
        &INFO_SETS
    }

    pub fn pick(self) -> Door {
        self.pick
    }

    pub fn offer(self) -> Door {
        self.offer
    }

    pub fn index(self) -> usize {
        2 * self.pick.index() + usize::from(!self.pick.is_smaller_other(self.offer))
    }

    /// The door Monte must have opened to reach this set.
    pub fn revealed(self) -> Door {
        Door::third(self.pick, self.offer)
    }
}

impl fmt::Display for InfoSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("*{}{}", self.pick, self.offer))
    }
}

/// The path of one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlayRecord {
    pub theta: Door,
    pub pick: Door,
    pub offer: Door,
    #[serde(rename = "final")]
    pub final_door: Door,
    pub revealed: Door,
    pub win: bool,
}

impl PlayRecord {
    /// Builds the record for moves `(theta, pick, offer, action)`, checking
    /// the rules of the game.
    pub fn from_moves(theta: Door, pick: Door, offer: Door, action: Action) -> Result<PlayRecord> {
        if offer == pick {
            return Err(Error::InvalidStrategy {
                code: format!("{theta}{pick}{offer}"),
                reason: "offer equals pick".into(),
            });
        }
        if pick != theta && offer != theta {
            return Err(Error::InvalidStrategy {
                code: format!("{theta}{pick}{offer}"),
                reason: "on a mismatch the offer must be the prize door".into(),
            });
        }
        let final_door = match action {
            Action::Hold => pick,
            Action::Switch => offer,
        };
        Ok(PlayRecord {
            theta,
            pick,
            offer,
            final_door,
            revealed: Door::third(pick, offer),
            win: final_door == theta,
        })
    }

    pub fn info_set(&self) -> InfoSet {
        InfoSet {
            pick: self.pick,
            offer: self.offer,
        }
    }

    pub fn action(&self) -> Action {
        if self.final_door == self.pick {
            Action::Hold
        } else {
            Action::Switch
        }
    }

    /// Checks every rule a legal round must satisfy.
    pub fn is_consistent(&self) -> bool {
        self.revealed != self.pick
            && self.revealed != self.offer
            && self.revealed != self.theta
            && self.pick != self.offer
            && (self.final_door == self.pick || self.final_door == self.offer)
            && (self.pick == self.theta || self.offer == self.theta)
            && self.win == (self.final_door == self.theta)
    }
}

impl fmt::Display for PlayRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.theta, self.pick, self.offer, self.final_door)
    }
}

/// Deterministic play of a pure strategy profile.
pub fn play(m: MontePure, c: ConiePure) -> PlayRecord {
    let theta = m.theta();
    let pick = c.pick();
    let offer = m.offer(pick);
    PlayRecord::from_moves(theta, pick, offer, c.action_for(offer))
        .expect("pure strategies always produce legal moves")
}

/// Conie's payoff: 1 if she wins the prize, else 0.
pub fn payoff(m: MontePure, c: ConiePure) -> u8 {
    u8::from(play(m, c).win)
}

/// A position where Conie makes her final choice, `(theta, x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecisionPosition {
    pub theta: Door,
    pub pick: Door,
    pub offer: Door,
}

impl DecisionPosition {
    pub fn info_set(self) -> InfoSet {
        InfoSet {
            pick: self.pick,
            offer: self.offer,
        }
    }

    pub fn is_match(self) -> bool {
        self.theta == self.pick
    }
}

impl fmt::Display for DecisionPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.theta, self.pick, self.offer)
    }
}

/// The full game tree with Conie's information-set partition.
#[derive(Clone, Debug)]
pub struct GameTree {
    decisions: Vec<DecisionPosition>,
    leaves: Vec<PlayRecord>,
}

impl GameTree {
    pub fn build() -> GameTree {
        let mut decisions = Vec::new();
        let mut leaves = Vec::new();
        for theta in Door::ALL {
            for pick in Door::ALL {
                for offer in GameTree::offers(theta, pick) {
                    decisions.push(DecisionPosition { theta, pick, offer });
                    for action in [Action::Hold, Action::Switch] {
                        let leaf = PlayRecord::from_moves(theta, pick, offer, action)
                            .expect("enumerated moves are legal");
                        leaves.push(leaf);
                    }
                }
            }
        }
        GameTree { decisions, leaves }
    }

    /// Admissible offers from position `(theta, pick)`.
    pub fn offers(theta: Door, pick: Door) -> Vec<Door> {
        if theta == pick {
            pick.others().to_vec()
        } else {
            vec![theta]
        }
    }

    /// Positions `(theta, x, y)` in lexicographic order.
    pub fn decision_positions(&self) -> &[DecisionPosition] {
        &self.decisions
    }

    pub fn leaves(&self) -> &[PlayRecord] {
        &self.leaves
    }

    pub fn winning_leaves(&self) -> impl Iterator<Item = &PlayRecord> {
        self.leaves.iter().filter(|l| l.win)
    }

    pub fn positions_in(&self, set: InfoSet) -> Vec<DecisionPosition> {
        self.decisions
            .iter()
            .copied()
            .filter(|p| p.info_set() == set)
            .collect()
    }

    /// Looks up a leaf by its four-digit label, e.g. `"1121"`.
    pub fn leaf(&self, label: &str) -> Option<&PlayRecord> {
        self.leaves.iter().find(|l| l.to_string() == label)
    }
}
