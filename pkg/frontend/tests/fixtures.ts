import { JSDOM } from "jsdom";

import { ExtractionSpec } from "../src/extract.js";

export function makeDom(html: string): Window {
  const dom = new JSDOM(html, { runScripts: "dangerously", pretendToBeVisual: true });
  return dom.window as unknown as Window;
}

export const CAPTURE_SPEC: ExtractionSpec = {
  attributes: ["text", "color", "font-size", "background-color", "class"],
};

// Known geometry: hero at (10, 20) 100x50, cta at (10, 90) 80x30,
// note at (120, 20) 60x40. Hero and cta are marked atomic.
export const LANDING_HTML = `<!doctype html><html><head><style>
  .hero { position: absolute; left: 10px; top: 20px; width: 100px; height: 50px; color: #102030; font-size: 20px; }
  .cta  { position: absolute; left: 10px; top: 90px; width: 80px; height: 30px; background-color: #3366ff; color: #ffffff; }
  .note { position: absolute; left: 120px; top: 20px; width: 60px; height: 40px; color: #222222; }
</style></head><body>
  <div class="hero" data-filter-by="text" data-evalby="text,color,font-size">Fast local agents</div>
  <button class="cta" data-filter-by="text" data-evalby="text,background-color">Start</button>
  <div class="note">plain candidate</div>
</body></html>`;

// Faithless reproduction of PANEL_HTML: the .cup button is missing, so
// any interaction script that needs it must fail.
export const BROKEN_PANEL_HTML = `<!doctype html><html><head><style>
  .board { position: absolute; left: 0px; top: 0px; width: 200px; height: 120px; background-color: #eeeeee; }
  .lamp  { position: absolute; left: 20px; top: 30px; width: 40px; height: 40px; background-color: #ff0000; }
</style></head><body>
  <div class="board">
    <div class="lamp"></div>
  </div>
</body></html>`;

// A positioned container with two children; clicking .cup recolors
// .lamp, which is the one attribute a post-click snapshot may differ in.
export const PANEL_HTML = `<!doctype html><html><head><style>
  .board { position: absolute; left: 0px; top: 0px; width: 200px; height: 120px; background-color: #eeeeee; }
  .lamp  { position: absolute; left: 20px; top: 30px; width: 40px; height: 40px; background-color: #ff0000; }
  .cup   { position: absolute; left: 80px; top: 30px; width: 40px; height: 40px; background-color: #00ff00; }
</style></head><body>
  <div class="board" data-filter-by="class" data-evalby="class,background-color">
    <div class="lamp" data-filter-by="class" data-evalby="class,background-color"></div>
    <button class="cup" data-filter-by="class" data-evalby="class,background-color"></button>
  </div>
  <script>
    document.querySelector(".cup").addEventListener("click", function () {
      document.querySelector(".lamp").style.backgroundColor = "#0000ff";
    });
  </script>
</body></html>`;
