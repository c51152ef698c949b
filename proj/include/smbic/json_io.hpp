#ifndef SMBIC_JSON_IO_HPP
#define SMBIC_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "smbic/bench.hpp"
#include "smbic/selection.hpp"
#include "smbic/synth.hpp"

namespace smbic {

nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const SelectionConfig& cfg);
nlohmann::json to_json(const SelectionReport& report);
nlohmann::json to_json(const BenchRow& row);
nlohmann::json to_json(const std::vector<BenchRow>& rows);
nlohmann::json params_json(const SbmParams& p);

void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace smbic

#endif
