// Tagged modular forms and space bases.
#pragma once
#include "modgrade/dims.hpp"
#include "modgrade/qexp.hpp"
#include <optional>
#include <vector>

namespace modgrade {

// How the Atkin-Lehner/tilde image of a form is known.
enum class ALKind { Level1Origin, VImage, EtaClosedForm, ExplicitImage, EigenSign, Unknown };

struct ALTag {
    ALKind kind = ALKind::Unknown;
    int sign = 0;                    // for EigenSign: tilde(f) = sign * p^{k/2} f
    std::optional<QExpansion> image; // for EtaClosedForm / ExplicitImage: tilde(f)

    static ALTag unknown() { return {}; }
    static ALTag level1_origin() { return {ALKind::Level1Origin, 0, std::nullopt}; }
    static ALTag v_image() { return {ALKind::VImage, 0, std::nullopt}; }
    static ALTag explicit_image(QExpansion g) {
        return {ALKind::ExplicitImage, 0, std::move(g)};
    }
    static ALTag eta_closed(QExpansion g) {
        return {ALKind::EtaClosedForm, 0, std::move(g)};
    }
    static ALTag eigen(int s);
};

enum class Provenance { Eisenstein, Eta, Product, VictorMiller, Ingested, Derived };

struct ModularForm {
    GroupSpec group;
    long k = 0;
    QExpansion expansion;
    ALTag al;
    Provenance prov = Provenance::Derived;

    static ModularForm make(GroupSpec g, long k, QExpansion e,
                            Provenance prov = Provenance::Derived,
                            ALTag al = ALTag::unknown());
};

enum class BasisOrigin { BuiltIn, Ingested };

struct SpaceBasis {
    GroupSpec group;
    long k = 0;
    CoefficientRing ring = CoefficientRing::Q();
    std::vector<ModularForm> forms;
    BasisOrigin origin = BasisOrigin::BuiltIn;

    long dim() const { return (long)forms.size(); }
    long prec() const;
};

const char* provenance_name(Provenance p);
const char* al_kind_name(ALKind k);

}  // namespace modgrade
