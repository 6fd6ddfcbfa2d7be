/**
 * Frozen service bodies recorded from a gateway run on the shipped
 * sensor-fusion fixture: the base snapshot, the remove-(a6,a2) mutation
 * response, the resulting snapshot, and an acyclic semantics toggle.
 */

import type { MutationResponse, SnapshotBody } from "../src/types";

export const goldenSnapshot = {
  "arguments": [
    {
      "id": "a1",
      "act_type": "proposal",
      "content": "Sensor fusion shall complete within 500 ms using conservative dual-channel verification.",
      "agent": "Safety",
      "quality": "safety",
      "rationale": "Dual-channel verification needs headroom to cross-check both channels before results feed planning.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 1,
        "turn_index": 1
      }
    },
    {
      "id": "a2",
      "act_type": "critique",
      "content": "A 500 ms fusion budget overruns the 30 ms planning cycle; fusion must finish within 30 ms.",
      "agent": "Efficiency",
      "quality": "efficiency",
      "rationale": "The planner consumes fresh fusion output every 30 ms under the real-time constraint.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 1,
        "turn_index": 2
      }
    },
    {
      "id": "a3",
      "act_type": "refinement",
      "content": "Split fusion into a two-stage pipeline: a fast path within 30 ms covering 95% of frames, and a thorough path within 500 ms for anomaly-triggered frames.",
      "agent": "Safety",
      "quality": "safety",
      "rationale": "A staged pipeline keeps the planning cycle fed while retaining deep verification for anomalies.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 2,
        "turn_index": 3
      }
    },
    {
      "id": "a4",
      "act_type": "critique",
      "content": "The thorough path must run asynchronously, the fast path needs at least 99% coverage, and a fallback must keep planning supplied.",
      "agent": "Efficiency",
      "quality": "efficiency",
      "rationale": "A synchronous thorough path would still stall the cycle, and 95% coverage leaves too many slow frames.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 2,
        "turn_index": 4
      }
    },
    {
      "id": "a5",
      "act_type": "refinement",
      "content": "Adopt the three-component fusion architecture: a synchronous fast path within 30 ms at 99% coverage or better, an asynchronous thorough path within 500 ms, and a fallback that preserves planning continuity.",
      "agent": "Safety",
      "quality": "safety",
      "rationale": "The three components jointly satisfy the latency budget, the coverage floor, and anomaly-time continuity.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 3,
        "turn_index": 5
      }
    },
    {
      "id": "a6",
      "act_type": "proposal",
      "content": "Adopt the three-component fusion architecture as negotiated.",
      "agent": "Efficiency",
      "quality": "efficiency",
      "rationale": "All efficiency constraints are met: 30 ms fast path, asynchronous thorough path, continuity fallback.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 3,
        "turn_index": 6
      }
    }
  ],
  "attacks": [
    {
      "attacker": "a2",
      "target": "a1",
      "origin": "P1",
      "confidence": 1.0,
      "rationale": "The planner consumes fresh fusion output every 30 ms under the real-time constraint."
    },
    {
      "attacker": "a3",
      "target": "a1",
      "origin": "P2",
      "confidence": 1.0,
      "rationale": "supersedes earlier version"
    },
    {
      "attacker": "a3",
      "target": "a2",
      "origin": "P3",
      "confidence": 1.0,
      "rationale": "resolves raised concern"
    },
    {
      "attacker": "a4",
      "target": "a3",
      "origin": "P1",
      "confidence": 1.0,
      "rationale": "A synchronous thorough path would still stall the cycle, and 95% coverage leaves too many slow frames."
    },
    {
      "attacker": "a5",
      "target": "a3",
      "origin": "P2",
      "confidence": 1.0,
      "rationale": "supersedes earlier version"
    },
    {
      "attacker": "a5",
      "target": "a4",
      "origin": "P3",
      "confidence": 1.0,
      "rationale": "resolves raised concern"
    },
    {
      "attacker": "a6",
      "target": "a2",
      "origin": "semantic",
      "confidence": 0.9,
      "rationale": "Consensus adoption of the final architecture withdraws the original latency objection."
    }
  ],
  "supports": [],
  "grounded_extension": [
    "a1",
    "a5",
    "a6"
  ],
  "preferred_extensions": [
    [
      "a1",
      "a5",
      "a6"
    ]
  ],
  "selected_extension": {
    "semantics": "grounded",
    "members": [
      "a1",
      "a5",
      "a6"
    ]
  },
  "accepted_requirements": [
    {
      "argument_id": "a1",
      "content": "Sensor fusion shall complete within 500 ms using conservative dual-channel verification."
    },
    {
      "argument_id": "a5",
      "content": "Adopt the three-component fusion architecture: a synchronous fast path within 30 ms at 99% coverage or better, an asynchronous thorough path within 500 ms, and a fallback that preserves planning continuity."
    },
    {
      "argument_id": "a6",
      "content": "Adopt the three-component fusion architecture as negotiated."
    }
  ],
  "statuses": {
    "a1": "in",
    "a2": "out",
    "a3": "out",
    "a4": "out",
    "a5": "in",
    "a6": "in"
  },
  "defense_chains": {
    "a1": [
      {
        "attacker": "a2",
        "defender": "a6",
        "origin": "semantic"
      },
      {
        "attacker": "a3",
        "defender": "a5",
        "origin": "P2"
      }
    ],
    "a5": [],
    "a6": []
  },
  "config": {},
  "journal": [],
  "snapshot": {
    "id": "s1",
    "parent": null,
    "semantics": "grounded"
  }
} as unknown as SnapshotBody;

export const removeEdgeResponse = {
  "snapshot_id": "s2",
  "delta": {
    "entered": [
      "a2"
    ],
    "left": [
      "a1"
    ]
  },
  "selected_extension": {
    "semantics": "grounded",
    "members": [
      "a2",
      "a5",
      "a6"
    ]
  }
} as unknown as MutationResponse;

export const afterRemovalSnapshot = {
  "arguments": [
    {
      "id": "a1",
      "act_type": "proposal",
      "content": "Sensor fusion shall complete within 500 ms using conservative dual-channel verification.",
      "agent": "Safety",
      "quality": "safety",
      "rationale": "Dual-channel verification needs headroom to cross-check both channels before results feed planning.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 1,
        "turn_index": 1
      }
    },
    {
      "id": "a2",
      "act_type": "critique",
      "content": "A 500 ms fusion budget overruns the 30 ms planning cycle; fusion must finish within 30 ms.",
      "agent": "Efficiency",
      "quality": "efficiency",
      "rationale": "The planner consumes fresh fusion output every 30 ms under the real-time constraint.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 1,
        "turn_index": 2
      }
    },
    {
      "id": "a3",
      "act_type": "refinement",
      "content": "Split fusion into a two-stage pipeline: a fast path within 30 ms covering 95% of frames, and a thorough path within 500 ms for anomaly-triggered frames.",
      "agent": "Safety",
      "quality": "safety",
      "rationale": "A staged pipeline keeps the planning cycle fed while retaining deep verification for anomalies.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 2,
        "turn_index": 3
      }
    },
    {
      "id": "a4",
      "act_type": "critique",
      "content": "The thorough path must run asynchronously, the fast path needs at least 99% coverage, and a fallback must keep planning supplied.",
      "agent": "Efficiency",
      "quality": "efficiency",
      "rationale": "A synchronous thorough path would still stall the cycle, and 95% coverage leaves too many slow frames.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 2,
        "turn_index": 4
      }
    },
    {
      "id": "a5",
      "act_type": "refinement",
      "content": "Adopt the three-component fusion architecture: a synchronous fast path within 30 ms at 99% coverage or better, an asynchronous thorough path within 500 ms, and a fallback that preserves planning continuity.",
      "agent": "Safety",
      "quality": "safety",
      "rationale": "The three components jointly satisfy the latency budget, the coverage floor, and anomaly-time continuity.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 3,
        "turn_index": 5
      }
    },
    {
      "id": "a6",
      "act_type": "proposal",
      "content": "Adopt the three-component fusion architecture as negotiated.",
      "agent": "Efficiency",
      "quality": "efficiency",
      "rationale": "All efficiency constraints are met: 30 ms fast path, asynchronous thorough path, continuity fallback.",
      "source": {
        "session": "ad_sensor_fusion",
        "round": 3,
        "turn_index": 6
      }
    }
  ],
  "attacks": [
    {
      "attacker": "a2",
      "target": "a1",
      "origin": "P1",
      "confidence": 1.0,
      "rationale": "The planner consumes fresh fusion output every 30 ms under the real-time constraint."
    },
    {
      "attacker": "a3",
      "target": "a1",
      "origin": "P2",
      "confidence": 1.0,
      "rationale": "supersedes earlier version"
    },
    {
      "attacker": "a3",
      "target": "a2",
      "origin": "P3",
      "confidence": 1.0,
      "rationale": "resolves raised concern"
    },
    {
      "attacker": "a4",
      "target": "a3",
      "origin": "P1",
      "confidence": 1.0,
      "rationale": "A synchronous thorough path would still stall the cycle, and 95% coverage leaves too many slow frames."
    },
    {
      "attacker": "a5",
      "target": "a3",
      "origin": "P2",
      "confidence": 1.0,
      "rationale": "supersedes earlier version"
    },
    {
      "attacker": "a5",
      "target": "a4",
      "origin": "P3",
      "confidence": 1.0,
      "rationale": "resolves raised concern"
    }
  ],
  "supports": [],
  "grounded_extension": [
    "a2",
    "a5",
    "a6"
  ],
  "preferred_extensions": [
    [
      "a2",
      "a5",
      "a6"
    ]
  ],
  "selected_extension": {
    "semantics": "grounded",
    "members": [
      "a2",
      "a5",
      "a6"
    ]
  },
  "accepted_requirements": [
    {
      "argument_id": "a5",
      "content": "Adopt the three-component fusion architecture: a synchronous fast path within 30 ms at 99% coverage or better, an asynchronous thorough path within 500 ms, and a fallback that preserves planning continuity."
    },
    {
      "argument_id": "a6",
      "content": "Adopt the three-component fusion architecture as negotiated."
    }
  ],
  "statuses": {
    "a1": "out",
    "a2": "in",
    "a3": "out",
    "a4": "out",
    "a5": "in",
    "a6": "in"
  },
  "defense_chains": {
    "a2": [
      {
        "attacker": "a3",
        "defender": "a5",
        "origin": "P2"
      }
    ],
    "a5": [],
    "a6": []
  },
  "config": {},
  "journal": [
    {
      "operation": "remove_attack",
      "payload": {
        "attacker": "a6",
        "target": "a2",
        "entered": [
          "a2"
        ],
        "left": [
          "a1"
        ]
      },
      "timestamp": 0
    }
  ],
  "snapshot": {
    "id": "s2",
    "parent": "s1",
    "semantics": "grounded"
  }
} as unknown as SnapshotBody;

export const semanticsToggleResponse = {
  "snapshot_id": "s3",
  "delta": {
    "entered": [],
    "left": []
  },
  "selected_extension": {
    "semantics": "preferred",
    "members": [
      "a1",
      "a5",
      "a6"
    ]
  }
} as unknown as MutationResponse;
