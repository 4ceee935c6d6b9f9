import { boot } from "./app";
import "./styles.css";

boot(document.getElementById("app")!);
