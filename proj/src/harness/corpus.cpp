#include "imgql/harness/corpus.hpp"

namespace imgql::harness {

namespace {

const std::string kStdlib = R"IMGQL(// Shared operator library: relative distances, similarity indexes,
// shape measures and patch detection.

// Distances scaled to the perimeter of a 1022x767 reference image, so
// one script works across image sizes.
let refImgPerimeter = 2 .*. (1022 .+. 767)
let imgSizeFactor = (volume(border) ./. refImgPerimeter)
let relDist(x) = (imgSizeFactor .*. x)

// Similarity indexes between two regions.
let dice(x,y) = (2 .*. volume(x & y)) ./. (volume(x) .+. volume(y))
let jaccard(x,y) = dice(x,y) ./. (2 .-. dice(x,y))
let sensitivity(x,y) = volume(x & y) ./. (volume(x & y) .+. volume((!x) & (y)))
let specificity(x,y) = volume((!x) & (!y)) ./. (volume((!x) & (!y)) .+. volume((x) & (!y)))
let accuracy(x,y) = (volume(x & y) .+. volume((!x) & (!y))) ./. (volume(x & y) .+. volume((!x) & (!y)) .+. volume(x & (!y)) .+. volume((!x) & (y)))

// Internal boundary and Polsby-Popper compactness of a region.
let square(x) = x .*. x
let iboundary(x) = near(interior(x)) & !(interior(x))
let ppM(x) = (volume(x) .*. 4 .*. 3.14) ./. (square(volume(iboundary(x))))

// Saturated colour patches: colour gates per channel, an area gate
// (below 40 percent of the image), compactness, and border contact.
let bNev = blue(nevus)
let rNev = red(nevus)
let gNev = green(nevus)
let patchBlue = distleq(relDist(5),(bNev > (rNev +. 30)) & (bNev > (gNev)) & (bNev >. 150))
let patchRed = distleq(relDist(5),(rNev > (bNev +. 100)) & (rNev > (gNev +. 20))) & (rNev >. 130)
let patchGreen = distleq(relDist(5),(gNev > (rNev +. 20)) & (gNev > bNev) & (gNev >. 100))
let patchPart(x,y) = ifB(volume(x) .<. (y .*. volume(tt)),x,ff)
let patchSample = patchPart(patchBlue,0.4) | patchPart(patchRed,0.4) | patchPart(patchGreen,0.4)
let patchAtBorder = touch(smoothen(patchSample,relDist(10)), distleq(relDist(20),border))
let patch = ifB(ppM(patchAtBorder) .>. 0.5, patchAtBorder, ff)
)IMGQL";

const std::string kNevusV0 = R"IMGQL(// Nevus segmentation pipeline (version 0).
import "stdlib.imgql"

load groundTruth = "$INPUTDIR/${NAME}_seg_RGB.png"
load nevus = "$INPUTDIR/$NAME.png"
let nevusImgIntens = intensity(nevus)
let groundIntens = intensity(groundTruth)

let similarTo(a,rad) = crossCorrelation(rad,nevusImgIntens,nevusImgIntens,a,min(nevusImgIntens),max(nevusImgIntens),15)

let almostBlack = nevusImgIntens <. 40.0
let blackBorder = grow(distleq(relDist(5),border), almostBlack)
let bgSampleWidth = relDist(200)
let bgSample = distleq(bgSampleWidth, blackBorder) & (!blackBorder) & (!patch)
let bgSimScore = similarTo(bgSample, relDist(5))
let bgSim = (bgSimScore >. 0.05) & (! patch) & (!blackBorder)
let preSeg = ((!border) S (bgSimScore <. 0.11)) & (! patch) & (!blackBorder)
let nevSeg = smoothen(maxvol(preSeg & (! (distleq(relDist(50), blackBorder)))), relDist(3))
let nevSegSmooth = smoothen(maxvol(preSeg & (! (distleq(relDist(50), blackBorder)))), relDist(10))
let nevSeg1 = maxvol(nevSeg & nevSegSmooth & !patch)
let nevSegV0 = nevSeg1

let groundTruth = groundIntens >. 0
save "$OUTPUTDIR/${NAME}_nevSegV0.png" nevSegV0
print "DICE V0" dice(nevSegV0,groundTruth)
)IMGQL";

}  // namespace

const std::string& stdlib_script() { return kStdlib; }
const std::string& nevus_script() { return kNevusV0; }

const std::string* corpus_lookup(const std::string& name) {
  if (name == "stdlib.imgql") return &kStdlib;
  if (name == "nevus_v0.imgql") return &kNevusV0;
  return nullptr;
}

}  // namespace imgql::harness
