#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "grz/control.hpp"
#include "grz/decide.hpp"
#include "grz/model.hpp"

namespace grz {

/// Frame file format:
///   {"worlds": n, "edges": [[i,j],...],
///    "close": {"reflexive": bool, "transitive": bool}}
/// The optional "close" member applies the requested closures after the
/// edges are loaded.
Frame frame_from_json(const nlohmann::json& j);
nlohmann::json frame_to_json(const Frame& f);

/// Model file format extends the frame format with
///   "valuation": {"p": [0,2], ...} and an optional "designated" world.
Model model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const Model& m);

PointedModel pointed_model_from_json(const nlohmann::json& j);
nlohmann::json pointed_model_to_json(const PointedModel& p);

/// Labeling file format:
///   {"frame": {...}, "designated": w0, "labels": {"0": "<formula>", ...}}
Labeling labeling_from_json(const nlohmann::json& j);
nlohmann::json labeling_to_json(const Labeling& l);

nlohmann::json countermodel_to_json(const Countermodel& c);
nlohmann::json search_report_to_json(const SearchReport& r);

/// DOT digraph: one node per world, reflexive edges dropped, transitive
/// reduction applied (proper clusters keep a cycle through their members).
/// Models annotate each node with its true variables, labelings with the
/// node's formula.
void export_dot(const Frame& f, std::ostream& out);
void export_dot(const Model& m, std::ostream& out);
void export_dot(const Labeling& l, std::ostream& out);

} // namespace grz
