#pragma once

namespace crbridge {

// 256 BRIEF test pairs (x1, y1, x2, y2), drawn once from N(0, 6.6^2) over a
// 31x31 patch and clipped to [-15, 15].
inline constexpr int kBriefPattern[256][4] = {
    {3, 0, 3, 1},
    {-5, -10, 8, -1},
    {-11, -8, 1, 4},
    {-2, 12, -1, -8},
    {2, -7, 2, 9},
    {1, 8, -2, 6},
    {-3, 11, 5, -2},
    {-3, 3, 6, -8},
    {-1, -8, -3, 9},
    {2, 6, -4, -3},
    {9, -4, 4, 8},
    {-6, 8, 13, 4},
    {9, -6, 2, 6},
    {1, -2, 0, 0},
    {-1, 4, 6, -7},
    {10, -7, -2, 4},
    {3, 7, 9, 4},
    {-2, 15, 0, 8},
    {2, 5, -8, -2},
    {10, -4, -3, 8},
    {0, 0, -1, 6},
    {5, 7, 3, 1},
    {-2, -2, 10, -2},
    {2, -3, -4, -2},
    {-5, 8, -3, 7},
    {0, 5, 2, -6},
    {2, -14, -6, -3},
    {3, -1, 9, 4},
    {11, 5, -2, 6},
    {-12, -7, -7, 6},
    {8, 2, 14, -5},
    {-13, -3, 9, 15},
    {-3, -1, 1, 6},
    {3, 9, -1, 3},
    {15, 0, -5, 5},
    {-8, 4, 4, 5},
    {13, 8, -8, -6},
    {-5, 2, -4, 1},
    {8, 0, -3, 2},
    {12, 8, -10, -10},
    {-8, -9, -4, -3},
    {4, -1, 11, -3},
    {1, -15, -8, 13},
    {6, -4, 1, -6},
    {-8, -6, -1, 7},
    {-7, -1, -7, 2},
    {8, -13, 3, -3},
    {-11, -10, 4, 13},
    {-9, -12, -2, 1},
    {-8, 3, -9, 0},
    {0, -10, 5, -2},
    {6, 3, 1, -8},
    {4, -2, -1, -1},
    {9, 14, 9, 3},
    {3, 9, -10, -15},
    {1, 0, -9, 4},
    {3, -5, -5, -15},
    {-2, 15, -7, 7},
    {-7, 11, 8, -4},
    {-3, 2, -4, -6},
    {1, 10, 2, 5},
    {2, 1, -3, -4},
    {-7, -10, 5, -11},
    {-7, 5, 13, 12},
    {1, -1, 0, 0},
    {-3, -6, 4, 4},
    {8, -2, -4, -4},
    {6, 5, 8, 5},
    {4, 8, -1, -6},
    {2, -2, -2, -9},
    {11, 10, -3, 1},
    {6, 5, 10, -1},
    {-5, 1, 6, -9},
    {0, 6, -10, -6},
    {3, 2, -7, 1},
    {3, -3, -9, -6},
    {3, -7, -11, -13},
    {-7, 15, -8, 1},
    {-2, 9, 5, -1},
    {2, 3, 3, 2},
    {-3, -5, -1, -4},
    {-2, 1, -5, 11},
    {3, -9, -8, 6},
    {12, 3, 3, 5},
    {4, -1, 2, -6},
    {-4, -7, 0, 0},
    {4, 1, -1, 8},
    {1, -12, -3, -2},
    {-1, -2, 6, -8},
    {-2, 7, 14, 9},
    {-1, -4, 6, -13},
    {2, 5, 4, 1},
    {-12, -9, -1, -3},
    {2, 12, 7, -8},
    {3, -3, -1, 6},
    {5, -1, 12, -3},
    {2, 4, 10, -4},
    {-10, -1, 3, 3},
    {-9, -3, -7, -9},
    {-11, -4, 5, 9},
    {-15, -6, 2, 2},
    {15, -2, -1, -10},
    {8, -5, 1, -4},
    {-4, -10, 4, 8},
    {8, 6, -4, -3},
    {-1, 0, 1, -7},
    {0, 1, -12, 1},
    {5, 2, 0, 11},
    {-4, -12, -7, -9},
    {-2, -5, 2, 6},
    {-6, 0, -1, 3},
    {0, -9, 5, -2},
    {2, 1, 5, 8},
    {4, 5, 6, -2},
    {-4, 9, -9, -13},
    {-6, 7, -1, 8},
    {-7, 5, -9, -4},
    {5, -4, 10, 9},
    {1, 5, 5, -4},
    {-8, -4, 7, -3},
    {-2, 3, 5, -9},
    {-5, -9, -2, -6},
    {10, 6, 8, 1},
    {10, -1, -7, 4},
    {-7, -1, -10, -2},
    {8, -3, 9, -6},
    {-1, -8, -6, -6},
    {-4, 2, 6, -9},
    {-8, 8, 6, -2},
    {-10, 5, 5, -6},
    {-8, -4, -6, -6},
    {-1, 3, -8, 2},
    {7, -1, 5, 4},
    {-2, -8, 5, -8},
    {-2, 0, -5, 8},
    {-1, -5, -9, 6},
    {4, 6, -5, 1},
    {-7, 6, -11, 0},
    {-13, 2, 0, 7},
    {-5, -2, -6, 11},
    {-8, 8, 3, -4},
    {15, -2, 1, 1},
    {-8, 7, -3, -15},
    {10, 9, 4, 2},
    {2, -7, 15, -15},
    {5, 9, 8, 6},
    {-3, -2, -13, 0},
    {5, -4, 7, 7},
    {-10, -2, 0, 1},
    {-14, 10, 2, -6},
    {-6, -2, 5, -10},
    {-2, -9, -6, 2},
    {-4, -1, 3, 6},
    {-3, -2, 2, -3},
    {-5, -5, 5, 0},
    {7, 15, 4, 7},
    {-3, 9, 1, -1},
    {-1, -2, -4, 10},
    {12, 6, -6, -15},
    {-9, 5, -14, 6},
    {-6, 3, -2, -2},
    {-8, -2, 7, -14},
    {-13, 2, 6, -1},
    {-5, -5, 3, -1},
    {-6, 8, 9, -8},
    {8, 4, -3, -7},
    {-4, -3, -7, 0},
    {-6, 1, 3, -8},
    {6, 6, 7, -1},
    {7, 10, 3, -5},
    {-3, -1, 4, -5},
    {9, -7, -1, -1},
    {-5, 5, 0, -4},
    {-3, 13, -1, 10},
    {-15, -4, -4, 1},
    {-8, 5, 5, 4},
    {7, 1, 2, -5},
    {0, -2, -2, -2},
    {-4, 3, 6, 3},
    {0, -8, 2, 15},
    {2, -3, -8, -7},
    {3, -5, -8, -2},
    {-4, 5, 6, 4},
    {0, -6, 5, -10},
    {-5, 15, -3, -5},
    {5, 10, -1, -5},
    {6, -15, -8, -8},
    {4, -5, -6, 10},
    {3, 4, -4, -7},
    {3, -5, -6, -2},
    {3, -2, 2, -11},
    {-6, 6, 2, 1},
    {5, -1, -6, 7},
    {1, -4, 3, 0},
    {5, 6, -3, -4},
    {-8, -2, 0, -1},
    {10, -4, 5, 2},
    {4, 1, 2, 3},
    {5, 4, 4, -2},
    {-4, -8, 6, 0},
    {15, 5, 13, -9},
    {2, -2, -5, -3},
    {1, 1, 2, -4},
    {-5, -6, -1, 0},
    {-7, 1, -3, -4},
    {-5, 0, 3, -4},
    {-5, 5, 12, -9},
    {-6, 6, 2, 6},
    {6, 10, -1, -4},
    {3, 10, 8, 0},
    {-1, -3, 1, 0},
    {8, 5, 1, 2},
    {-13, 11, -10, -12},
    {-5, 8, -3, 0},
    {-5, 11, -6, -9},
    {-7, -4, 10, -4},
    {-11, -5, -8, 2},
    {10, -2, 4, -1},
    {-3, -7, -2, -3},
    {-4, 0, 5, 8},
    {-2, -4, -6, -5},
    {-15, 5, -3, -5},
    {-3, -9, -6, 4},
    {-2, 4, 8, 5},
    {-9, 7, -1, -14},
    {-3, 5, 0, -8},
    {5, -4, -1, 4},
    {4, -4, -10, -7},
    {-3, 1, 5, -3},
    {-3, 8, 6, -1},
    {2, -7, -12, 6},
    {2, -10, 5, -5},
    {4, -6, -4, 4},
    {6, 3, 10, 1},
    {-6, -2, -4, 10},
    {-1, -3, -7, 5},
    {4, -6, 6, 8},
    {3, -9, 8, 1},
    {5, 3, 11, -3},
    {-3, -2, 7, 0},
    {8, -3, -1, 1},
    {-1, 2, 9, 5},
    {2, 1, 5, 7},
    {6, 1, 0, 3},
    {11, 0, -2, 3},
    {4, 8, -10, 4},
    {2, 4, 0, -6},
    {4, 2, 8, 1},
    {2, 2, -2, -6},
    {12, -6, 1, -4},
    {-3, 8, 2, 10},
    {2, 5, -5, -11},
    {-1, 3, 8, 9},
    {4, 11, -6, 4},
    {-5, -11, 7, -13},
    {-2, 2, 6, 0},
};

}  // namespace crbridge
