#pragma once

#include <string>
#include <vector>

/// Telecom ontology subset used by the knowledge base: classes and
/// predicates under http://purl.org/toco/, plus rdf:type.
namespace sara::kg::vocab {

inline const std::string toco = "http://purl.org/toco/";
inline const std::string rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string xsd_ns = "http://www.w3.org/2001/XMLSchema#";

inline const std::string rdf_type = rdf_ns + "type";

// classes
inline const std::string AccessPoint = toco + "AccessPoint";
inline const std::string UserEquipment = toco + "UserEquipment";
inline const std::string Association = toco + "Association";
inline const std::string WLAN = toco + "WLAN";
inline const std::string Service = toco + "Service";

// predicates
inline const std::string stationsInRange = toco + "stationsInRange";
inline const std::string associatedStations = toco + "associatedStations";
inline const std::string hasWLAN = toco + "hasWLAN";
inline const std::string antennaGain = toco + "antennaGain";     // dBi
inline const std::string hasTxPower = toco + "hasTxPower";       // dBm
inline const std::string From = toco + "From";
inline const std::string To = toco + "To";
inline const std::string hasBandWidth = toco + "hasBandWidth";
inline const std::string hasValue = toco + "hasValue";           // Mbit/s
inline const std::string hasService = toco + "hasService";
inline const std::string isVideo = toco + "isVideo";
inline const std::string usesTechnology = toco + "usesTechnology";

// technology individuals
inline const std::string WiFi = toco + "WiFi";
inline const std::string LTE = toco + "LTE";
inline const std::string Satellite = toco + "Satellite";

inline const std::vector<std::string>& known_predicates() {
    static const std::vector<std::string> preds = {
        rdf_type,   stationsInRange, associatedStations, hasWLAN,
        antennaGain, hasTxPower,     From,               To,
        hasBandWidth, hasValue,      hasService,         isVideo,
        usesTechnology,
    };
    return preds;
}

} // namespace sara::kg::vocab
