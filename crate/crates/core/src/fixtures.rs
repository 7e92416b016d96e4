//! Small named games used throughout the tests, benches and docs.

use crate::game::{Game, VertexKind::*};

/// `1 avg -> (2, 3)`: a single fair coin flip, value 1/2.
pub fn game_a() -> Game {
    Game::new(3, 1, &[(Avg, [2, 3])]).unwrap()
}

/// Two average vertices feeding each other, values (2/3, 1/3).
pub fn game_b() -> Game {
    Game::new(4, 1, &[(Avg, [2, 4]), (Avg, [1, 3])]).unwrap()
}

/// A min vertex with a self-loop and the 0-sink as children.
pub fn game_c() -> Game {
    Game::new(3, 1, &[(Min, [1, 2])]).unwrap()
}

/// Two min vertices that can cycle forever; every x in [0,1] on both is a fixed point.
pub fn game_d() -> Game {
    Game::new(4, 1, &[(Min, [2, 4]), (Min, [1, 4])]).unwrap()
}

/// Max and min vertices in a cycle with an exit each; all values 0.
pub fn game_e() -> Game {
    Game::new(4, 1, &[(Max, [2, 3]), (Min, [1, 4])]).unwrap()
}

/// A max vertex choosing between the two sinks.
pub fn game_f() -> Game {
    Game::new(3, 1, &[(Max, [2, 3])]).unwrap()
}

/// A max vertex over two average vertices, values (3/4, 1/2, 3/4).
pub fn game_g() -> Game {
    Game::new(5, 1, &[(Max, [2, 3]), (Avg, [4, 5]), (Avg, [2, 5])]).unwrap()
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, Game)> {
    vec![
        ("GAME-A", game_a()),
        ("GAME-B", game_b()),
        ("GAME-C", game_c()),
        ("GAME-D", game_d()),
        ("GAME-E", game_e()),
        ("GAME-F", game_f()),
        ("GAME-G", game_g()),
    ]
}
