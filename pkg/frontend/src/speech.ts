// Optional spoken captions. Off by default; the caption log is the contract
// and stays testable without audio.

// The engine estimates durations at 170 words per minute. Browser synthesis
// rate 1.0 lands around 180 wpm for most en voices, so scale toward 170.
const ENGINE_WPM = 170;
const SYNTH_BASELINE_WPM = 180;

export function speechRate(targetWpm = ENGINE_WPM): number {
  return targetWpm / SYNTH_BASELINE_WPM;
}

/** Returns a caption hook for UiSession.speech, or null when the runtime
 * has no speechSynthesis (Node, very old browsers). */
export function makeSpeaker(rate = speechRate()): ((text: string) => void) | null {
  if (typeof window === "undefined" || !("speechSynthesis" in window)) return null;
  const synth = window.speechSynthesis;
  return (text: string) => {
    try {
      const u = new SpeechSynthesisUtterance(text);
      u.rate = rate;
      synth.cancel(); // a new event supersedes whatever is still being read
      synth.speak(u);
    } catch {
      // audio is best effort
    }
  };
}
