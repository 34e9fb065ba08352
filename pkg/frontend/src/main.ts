import * as api from './api';
import { createCockpit } from './app';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

void createCockpit(root, api).start();
