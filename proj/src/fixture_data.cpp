#include "prehist/selftest.hpp"

namespace prehist {

const char* fixture_g3s_proof() {
  return R"prehist_fixture({
  "format": "prehist/1",
  "calculus": "g3s-full",
  "proof": {
    "rule": "not-r",
    "sequent": {"ant": [], "suc": ["~[](P & ~[]P)"]},
    "principal": {"side": "suc", "index": 0},
    "premises": [{
      "rule": "box-l",
      "sequent": {"ant": ["[](P & ~[]P)"], "suc": []},
      "principal": {"side": "ant", "index": 0},
      "premises": [{
        "rule": "and-l",
        "sequent": {"ant": ["P & ~[]P", "[](P & ~[]P)"], "suc": []},
        "principal": {"side": "ant", "index": 0},
        "premises": [{
          "rule": "not-l",
          "sequent": {"ant": ["P", "~[]P", "[](P & ~[]P)"], "suc": []},
          "principal": {"side": "ant", "index": 1},
          "premises": [{
            "rule": "box-r",
            "sequent": {"ant": ["P", "[](P & ~[]P)"], "suc": ["[]P"]},
            "principal": {"side": "suc", "index": 0},
            "premises": [{
              "rule": "box-l",
              "sequent": {"ant": ["[](P & ~[]P)"], "suc": ["P"]},
              "principal": {"side": "ant", "index": 0},
              "premises": [{
                "rule": "and-l",
                "sequent": {"ant": ["P & ~[]P", "[](P & ~[]P)"], "suc": ["P"]},
                "principal": {"side": "ant", "index": 0},
                "premises": [{
                  "rule": "ax",
                  "sequent": {"ant": ["P", "~[]P", "[](P & ~[]P)"], "suc": ["P"]},
                  "premises": []
                }]
              }]
            }]
          }]
        }]
      }]
    }]
  }
}
)prehist_fixture";
}

const char* fixture_g3s_realization() {
  return R"prehist_fixture({
  "format": "prehist/1",
  "realization": {"n0": "x", "p0": "t*x"},
  "sequents": [
    "=> ~x:(P & ~(t*x):P)",
    "x:(P & ~(t*x):P) =>",
    "P & ~(t*x):P, x:(P & ~(t*x):P) =>",
    "P, ~(t*x):P, x:(P & ~(t*x):P) =>",
    "P, x:(P & ~(t*x):P) => (t*x):P",
    "x:(P & ~(t*x):P) => P",
    "P & ~(t*x):P, x:(P & ~(t*x):P) => P",
    "P, ~(t*x):P, x:(P & ~(t*x):P) => P"
  ]
}
)prehist_fixture";
}

const char* fixture_g3lp_proof() {
  return R"prehist_fixture({
  "format": "prehist/1",
  "calculus": "g3lp",
  "proof": {
    "rule": "not-r",
    "sequent": {"ant": [], "suc": ["~x:(P & ~(t*x):P)"]},
    "principal": {"side": "suc", "index": 0},
    "premises": [{
      "rule": "colon-l",
      "sequent": {"ant": ["x:(P & ~(t*x):P)"], "suc": []},
      "principal": {"side": "ant", "index": 0},
      "premises": [{
        "rule": "and-l",
        "sequent": {"ant": ["P & ~(t*x):P", "x:(P & ~(t*x):P)"], "suc": []},
        "principal": {"side": "ant", "index": 0},
        "premises": [{
          "rule": "not-l",
          "sequent": {"ant": ["P", "~(t*x):P", "x:(P & ~(t*x):P)"], "suc": []},
          "principal": {"side": "ant", "index": 1},
          "premises": [{
            "rule": "dot-r",
            "sequent": {"ant": ["P", "x:(P & ~(t*x):P)"], "suc": ["(t*x):P"]},
            "principal": {"side": "suc", "index": 0},
            "premises": [{
              "rule": "colon-r-const",
              "sequent": {"ant": ["P", "x:(P & ~(t*x):P)"], "suc": ["t:(P & ~(t*x):P -> P)", "(t*x):P"]},
              "principal": {"side": "suc", "index": 0},
              "premises": [{
                "rule": "imp-r",
                "sequent": {"ant": [], "suc": ["P & ~(t*x):P -> P"]},
                "principal": {"side": "suc", "index": 0},
                "premises": [{
                  "rule": "and-l",
                  "sequent": {"ant": ["P & ~(t*x):P"], "suc": ["P"]},
                  "principal": {"side": "ant", "index": 0},
                  "premises": [{
                    "rule": "ax",
                    "sequent": {"ant": ["P", "~(t*x):P"], "suc": ["P"]},
                    "premises": []
                  }]
                }]
              }]
            }, {
              "rule": "colon-r-term",
              "sequent": {"ant": ["P", "x:(P & ~(t*x):P)"], "suc": ["x:(P & ~(t*x):P)", "(t*x):P"]},
              "principal": {"side": "suc", "index": 0},
              "premises": [{
                "rule": "colon-l",
                "sequent": {"ant": ["x:(P & ~(t*x):P)"], "suc": ["P & ~(t*x):P"]},
                "principal": {"side": "ant", "index": 0},
                "premises": [{
                  "rule": "and-l",
                  "sequent": {"ant": ["P & ~(t*x):P", "x:(P & ~(t*x):P)"], "suc": ["P & ~(t*x):P"]},
                  "principal": {"side": "ant", "index": 0},
                  "premises": [{
                    "rule": "and-r",
                    "sequent": {"ant": ["P", "~(t*x):P", "x:(P & ~(t*x):P)"], "suc": ["P & ~(t*x):P"]},
                    "principal": {"side": "suc", "index": 0},
                    "premises": [{
                      "rule": "ax",
                      "sequent": {"ant": ["P", "~(t*x):P", "x:(P & ~(t*x):P)"], "suc": ["P"]},
                      "premises": []
                    }, {
                      "rule": "not-l",
                      "sequent": {"ant": ["P", "~(t*x):P", "x:(P & ~(t*x):P)"], "suc": ["~(t*x):P"]},
                      "principal": {"side": "ant", "index": 1},
                      "premises": [{
                        "rule": "not-r",
                        "sequent": {"ant": ["P", "x:(P & ~(t*x):P)"], "suc": ["(t*x):P", "~(t*x):P"]},
                        "principal": {"side": "suc", "index": 1},
                        "premises": [{
                          "rule": "colon-r-term",
                          "sequent": {"ant": ["P", "(t*x):P", "x:(P & ~(t*x):P)"], "suc": ["(t*x):P"]},
                          "principal": {"side": "suc", "index": 0},
                          "premises": [{
                            "rule": "colon-l",
                            "sequent": {"ant": ["(t*x):P"], "suc": ["P"]},
                            "principal": {"side": "ant", "index": 0},
                            "premises": [{
                              "rule": "ax",
                              "sequent": {"ant": ["P", "(t*x):P"], "suc": ["P"]},
                              "premises": []
                            }]
                          }]
                        }]
                      }]
                    }]
                  }]
                }]
              }]
            }]
          }]
        }]
      }]
    }]
  }
}
)prehist_fixture";
}

const char* fixture_g3lp_projection() {
  return R"prehist_fixture({
  "format": "prehist/1",
  "calculus": "g3s-boxcut",
  "proof": {
    "rule": "not-r",
    "sequent": {"ant": [], "suc": ["~[](P & ~[]P)"]},
    "principal": {"side": "suc", "index": 0},
    "premises": [{
      "rule": "box-l",
      "sequent": {"ant": ["[](P & ~[]P)"], "suc": []},
      "principal": {"side": "ant", "index": 0},
      "premises": [{
        "rule": "and-l",
        "sequent": {"ant": ["P & ~[]P", "[](P & ~[]P)"], "suc": []},
        "principal": {"side": "ant", "index": 0},
        "premises": [{
          "rule": "not-l",
          "sequent": {"ant": ["P", "~[]P", "[](P & ~[]P)"], "suc": []},
          "principal": {"side": "ant", "index": 1},
          "premises": [{
            "rule": "boxcut",
            "sequent": {"ant": ["P", "[](P & ~[]P)"], "suc": ["[]P"]},
            "principal": {"cut": "P & ~[]P -> P"},
            "premises": [{
              "rule": "box-r",
              "sequent": {"ant": ["P", "[](P & ~[]P)"], "suc": ["[](P & ~[]P)", "[]P"]},
              "principal": {"side": "suc", "index": 0},
              "premises": [{
                "rule": "box-l",
                "sequent": {"ant": ["[](P & ~[]P)"], "suc": ["P & ~[]P"]},
                "principal": {"side": "ant", "index": 0},
                "premises": [{
                  "rule": "and-l",
                  "sequent": {"ant": ["P & ~[]P", "[](P & ~[]P)"], "suc": ["P & ~[]P"]},
                  "principal": {"side": "ant", "index": 0},
                  "premises": [{
                    "rule": "and-r",
                    "sequent": {"ant": ["P", "~[]P", "[](P & ~[]P)"], "suc": ["P & ~[]P"]},
                    "principal": {"side": "suc", "index": 0},
                    "premises": [{
                      "rule": "ax",
                      "sequent": {"ant": ["P", "~[]P", "[](P & ~[]P)"], "suc": ["P"]},
                      "premises": []
                    }, {
                      "rule": "not-l",
                      "sequent": {"ant": ["P", "~[]P", "[](P & ~[]P)"], "suc": ["~[]P"]},
                      "principal": {"side": "ant", "index": 1},
                      "premises": [{
                        "rule": "not-r",
                        "sequent": {"ant": ["P", "[](P & ~[]P)"], "suc": ["[]P", "~[]P"]},
                        "principal": {"side": "suc", "index": 1},
                        "premises": [{
                          "rule": "box-r",
                          "sequent": {"ant": ["P", "[]P", "[](P & ~[]P)"], "suc": ["[]P"]},
                          "principal": {"side": "suc", "index": 0},
                          "premises": [{
                            "rule": "box-l",
                            "sequent": {"ant": ["[]P"], "suc": ["P"]},
                            "principal": {"side": "ant", "index": 0},
                            "premises": [{
                              "rule": "ax",
                              "sequent": {"ant": ["P", "[]P"], "suc": ["P"]},
                              "premises": []
                            }]
                          }]
                        }]
                      }]
                    }]
                  }]
                }]
              }]
            }, {
              "rule": "box-r",
              "sequent": {"ant": ["P", "[](P & ~[]P)"], "suc": ["[](P & ~[]P -> P)", "[]P"]},
              "principal": {"side": "suc", "index": 0},
              "premises": [{
                "rule": "imp-r",
                "sequent": {"ant": [], "suc": ["P & ~[]P -> P"]},
                "principal": {"side": "suc", "index": 0},
                "premises": [{
                  "rule": "and-l",
                  "sequent": {"ant": ["P & ~[]P"], "suc": ["P"]},
                  "principal": {"side": "ant", "index": 0},
                  "premises": [{
                    "rule": "ax",
                    "sequent": {"ant": ["P", "~[]P"], "suc": ["P"]},
                    "premises": []
                  }]
                }]
              }]
            }]
          }]
        }]
      }]
    }]
  }
}
)prehist_fixture";
}

const char* fixture_kripke() {
  return R"prehist_fixture({
  "worlds": ["w"],
  "relation": [["w", "w"]],
  "valuation": {"P": []}
}
)prehist_fixture";
}

}  // namespace prehist
